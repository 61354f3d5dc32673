use serde::Serialize;

use super::{split_colouring, EdgeColouring, EdgeSplit};
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::random::{oplus_union, PartSpec, Seed};

/// Attempt budget for the edge-disjoint union of the two halves.
const UNION_ATTEMPTS: usize = 100_000;

/// How an `r`-regular graph is assembled from two halves `G1`, `G2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum Decomposition {
    /// `G1` is `r1`-regular, `G2` is `r2`-regular.
    TwoRegular { r1: usize, r2: usize },
    /// `r = 6`, odd `n`: three Hamiltonian cycles, the third dealt out
    /// alternately along its cycle order.
    ThreeCycles,
    /// `r = 5`: a perfect matching and two Hamiltonian cycles; each half is a
    /// cycle plus about half of the matching.
    CyclesAndMatching,
}

impl Decomposition {
    pub fn for_degree(n: usize, r: usize) -> Result<Self> {
        if r < 5 {
            return Err(Error::InvalidParameter(format!(
                "degree must be at least 5, got {r}"
            )));
        }
        if (n * r) % 2 == 1 {
            return Err(Error::OddPointCount { n, r });
        }
        Ok(if r == 5 {
            Decomposition::CyclesAndMatching
        } else if r % 2 == 1 {
            Decomposition::TwoRegular {
                r1: r.div_ceil(2),
                r2: (r - 1) / 2,
            }
        } else if (n * (r / 2)).is_multiple_of(2) {
            Decomposition::TwoRegular {
                r1: r / 2,
                r2: r / 2,
            }
        } else if r == 6 {
            Decomposition::ThreeCycles
        } else {
            Decomposition::TwoRegular {
                r1: r / 2 + 1,
                r2: r / 2 - 1,
            }
        })
    }

    /// The factors to sample, in the order [`Decomposition::halves`] reads them.
    pub fn parts(&self, n: usize) -> Vec<PartSpec> {
        match *self {
            Decomposition::TwoRegular { r1, r2 } => {
                vec![PartSpec::Regular { r: r1 }, PartSpec::Regular { r: r2 }]
            }
            Decomposition::ThreeCycles => vec![PartSpec::HamiltonianCycle; 3],
            Decomposition::CyclesAndMatching => vec![
                PartSpec::Matching { m: n / 2 },
                PartSpec::HamiltonianCycle,
                PartSpec::HamiltonianCycle,
            ],
        }
    }

    /// Deals the sampled factors into the two halves.
    pub fn halves(
        &self,
        n: usize,
        parts: &[Vec<(Vertex, Vertex)>],
    ) -> (Vec<(Vertex, Vertex)>, Vec<(Vertex, Vertex)>) {
        match self {
            Decomposition::TwoRegular { .. } => (parts[0].clone(), parts[1].clone()),
            Decomposition::ThreeCycles => {
                let (mut g1, mut g2) = (parts[0].clone(), parts[1].clone());
                for (pos, &e) in parts[2].iter().enumerate() {
                    // 1-based even positions to G1: (n-1)/2 edges, the rest to G2
                    if (pos + 1) % 2 == 0 {
                        g1.push(e);
                    } else {
                        g2.push(e);
                    }
                }
                (g1, g2)
            }
            Decomposition::CyclesAndMatching => {
                let quarter = n / 4;
                let mut g1 = parts[1].clone();
                g1.extend_from_slice(&parts[0][..quarter]);
                let mut g2 = parts[2].clone();
                g2.extend_from_slice(&parts[0][quarter..]);
                (g1, g2)
            }
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RegularReport {
    pub n: usize,
    pub r: usize,
    pub decomposition: Decomposition,
    pub diam1: usize,
    pub diam2: usize,
    pub colours_used: usize,
    /// `diam(G1) + diam(G2)`; the halves share no edge.
    pub bound: usize,
    pub union_attempts: usize,
}

#[derive(Debug, Clone)]
pub struct RegularColouring {
    pub graph: Graph,
    pub split: EdgeSplit,
    pub colouring: EdgeColouring,
    pub report: RegularReport,
}

/// Samples an `r`-regular graph as an edge-disjoint union of two random
/// halves and colours it from that split.
pub fn rc_random_regular(n: usize, r: usize, seed: Seed) -> Result<RegularColouring> {
    let decomposition = Decomposition::for_degree(n, r)?;
    let union = oplus_union(n, &decomposition.parts(n), seed, UNION_ATTEMPTS)?;
    let (h1, h2) = decomposition.halves(n, &union.parts);
    let split = EdgeSplit::from_pairs(union.graph.clone(), &h1, &h2)?;
    debug_assert!(split.shared().is_empty());
    let coloured = split_colouring(&split)?;
    let report = RegularReport {
        n,
        r,
        decomposition,
        diam1: coloured.diam1,
        diam2: coloured.diam2,
        colours_used: coloured.colours_used,
        bound: coloured.diam1 + coloured.diam2,
        union_attempts: union.attempts,
    };
    Ok(RegularColouring {
        graph: union.graph,
        split,
        colouring: coloured.colouring,
        report,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decomposition_choice() {
        use Decomposition::*;
        assert_eq!(
            Decomposition::for_degree(10, 7).unwrap(),
            TwoRegular { r1: 4, r2: 3 }
        );
        assert_eq!(
            Decomposition::for_degree(100, 6).unwrap(),
            TwoRegular { r1: 3, r2: 3 }
        );
        assert_eq!(Decomposition::for_degree(101, 6).unwrap(), ThreeCycles);
        assert_eq!(Decomposition::for_degree(64, 5).unwrap(), CyclesAndMatching);
        assert_eq!(
            Decomposition::for_degree(101, 8).unwrap(),
            TwoRegular { r1: 4, r2: 4 }
        );
        assert_eq!(
            Decomposition::for_degree(101, 10).unwrap(),
            TwoRegular { r1: 6, r2: 4 }
        );
        assert!(matches!(
            Decomposition::for_degree(11, 5),
            Err(Error::OddPointCount { .. })
        ));
        assert!(matches!(
            Decomposition::for_degree(12, 4),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn r6_odd_n_three_cycles() {
        let out = rc_random_regular(101, 6, Seed(3)).unwrap();
        assert_eq!(out.graph.regular_degree(), Some(6));
        assert_eq!(out.report.decomposition, Decomposition::ThreeCycles);
        assert_eq!(out.split.edges1().len(), 101 + 50);
        assert_eq!(out.split.edges2().len(), 101 + 51);
        assert!(out.report.colours_used <= out.report.bound);
    }

    #[test]
    fn r5_cycle_plus_quarter_matching() {
        let out = rc_random_regular(64, 5, Seed(3)).unwrap();
        assert_eq!(out.graph.regular_degree(), Some(5));
        assert_eq!(out.split.edges1().len(), 64 + 16);
        assert_eq!(out.split.edges2().len(), 64 + 16);
        let degrees1 = out.split.subgraph1().degrees();
        assert_eq!(degrees1.iter().filter(|&&d| d == 3).count(), 32);
        assert!(out.report.colours_used <= out.report.diam1 + out.report.diam2);
    }

    #[test]
    fn r7_two_regular_halves() {
        let out = rc_random_regular(10, 7, Seed(3)).unwrap();
        assert_eq!(out.graph.regular_degree(), Some(7));
        assert_eq!(out.split.subgraph1().regular_degree(), Some(4));
        assert_eq!(out.split.subgraph2().regular_degree(), Some(3));
    }
}
