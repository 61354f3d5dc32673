//! Gap sequences and the two-step cycle-plus-matching construction.
//!
//! A `2m`-subset `B = {b_1 < ... < b_2m}` of `{1, ..., n}` is encoded as
//! `Y_0 = b_1`, `Y_i = b_{i+1} - b_i` for `0 < i < 2m`, and `Y_2m = n - b_2m`.
//! Subsets here use 1-based labels; graphs built from them are 0-based.

use rand::seq::index;
use serde::{Deserialize, Serialize};

use super::{random_matching_edges, Seed};
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GapSequence {
    n: usize,
    y: Vec<usize>,
}

impl GapSequence {
    /// Validates `Y_i >= 1` for `i < 2m`, odd length `2m + 1` with `m >= 1`,
    /// and `sum Y_i = n`.
    pub fn new(n: usize, y: Vec<usize>) -> Result<Self> {
        if y.len() < 3 || y.len().is_multiple_of(2) {
            return Err(Error::MalformedSubset(format!(
                "gap sequence length must be 2m+1 with m >= 1, got {}",
                y.len()
            )));
        }
        if y[..y.len() - 1].contains(&0) {
            return Err(Error::MalformedSubset(
                "gaps before the last must be positive".into(),
            ));
        }
        let total: usize = y.iter().sum();
        if total != n {
            return Err(Error::MalformedSubset(format!(
                "gaps sum to {total}, expected {n}"
            )));
        }
        Ok(GapSequence { n, y })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Half the subset size.
    pub fn m(&self) -> usize {
        (self.y.len() - 1) / 2
    }

    pub fn values(&self) -> &[usize] {
        &self.y
    }
}

pub fn gap_sequence_from_subset(b: &[usize], n: usize) -> Result<GapSequence> {
    if b.is_empty() || b.len() % 2 == 1 {
        return Err(Error::MalformedSubset(format!(
            "subset size must be even and positive, got {}",
            b.len()
        )));
    }
    if b[0] < 1 || *b.last().expect("non-empty") > n {
        return Err(Error::MalformedSubset(format!(
            "values must lie in 1..={n}"
        )));
    }
    if b.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::MalformedSubset(
            "subset must be strictly increasing".into(),
        ));
    }
    let mut y = Vec::with_capacity(b.len() + 1);
    y.push(b[0]);
    y.extend(b.windows(2).map(|w| w[1] - w[0]));
    y.push(n - b[b.len() - 1]);
    GapSequence::new(n, y)
}

pub fn subset_from_gap_sequence(gaps: &GapSequence) -> Vec<usize> {
    let twice_m = 2 * gaps.m();
    gaps.y[..twice_m]
        .iter()
        .scan(0, |pos, &gap| {
            *pos += gap;
            Some(*pos)
        })
        .collect()
}

/// Builds the graph on `n` vertices obtained from the cycle `b_1 ... b_2m b_1`
/// plus `matching` (pairs of positions `0..2m` into `B`) by subdividing the
/// cycle edge `b_i b_{i+1}` into `Y_i` edges and the closing edge `b_2m b_1`
/// into `Y_2m + Y_0` edges. Vertex `k` of the result is label `k + 1`.
pub fn subdivide(gaps: &GapSequence, matching: &[(usize, usize)]) -> Result<Graph> {
    let n = gaps.n();
    let b = subset_from_gap_sequence(gaps);
    let twice_m = b.len();
    let mut edges = Vec::with_capacity(n + matching.len());
    for i in 0..twice_m {
        let from = b[i];
        let len = if i + 1 < twice_m {
            gaps.y[i + 1]
        } else {
            gaps.y[twice_m] + gaps.y[0]
        };
        // walk `len` steps around 1..=n starting at `from`
        let mut at = from;
        for _ in 0..len {
            let next = if at == n { 1 } else { at + 1 };
            edges.push((at - 1, next - 1));
            at = next;
        }
        debug_assert_eq!(at, b[(i + 1) % twice_m]);
    }
    for &(x, y) in matching {
        if x >= twice_m || y >= twice_m || x == y {
            return Err(Error::InvalidParameter(format!(
                "matching pair ({x}, {y}) is not a pair of distinct positions below {twice_m}"
            )));
        }
        edges.push((b[x] - 1, b[y] - 1));
    }
    Graph::new(n, &edges)
}

/// Whether matching edges may coincide with the cycle `b_1 ... b_2m b_1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MatchingRule {
    /// Resample the matching while it uses an edge `b_i b_{i+1}` or `b_2m b_1`.
    AvoidCycle,
    /// Any perfect matching on `B`.
    Unrestricted,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubdivisionRecord {
    /// `B`, 1-based, increasing.
    pub subset: Vec<usize>,
    /// Matching as position pairs into `subset`.
    pub matching: Vec<(usize, usize)>,
    pub gaps: Vec<usize>,
    pub matching_attempts: usize,
}

impl SubdivisionRecord {
    /// Matching edges as 0-based graph vertices.
    pub fn matching_edges(&self) -> Vec<(Vertex, Vertex)> {
        self.matching
            .iter()
            .map(|&(x, y)| (self.subset[x] - 1, self.subset[y] - 1))
            .collect()
    }
}

const MATCHING_ATTEMPTS: usize = 10_000;

/// The cycle `(1, 2, ..., n, 1)` plus an `⌊n/4⌋`-edge random matching, built
/// in two steps: a uniform `2m`-subset `B`, then an independent uniform
/// perfect matching on `B`, then subdivision by the gaps of `B`.
pub fn subdivide_cycle_model(
    n: usize,
    seed: Seed,
    rule: MatchingRule,
) -> Result<(Graph, SubdivisionRecord)> {
    if n < 8 {
        return Err(Error::InvalidParameter(format!(
            "cycle-plus-quarter-matching model needs n >= 8, got {n}"
        )));
    }
    let m = n / 4;
    let twice_m = 2 * m;

    let mut rng = seed.derive(0).rng();
    let mut subset: Vec<usize> = index::sample(&mut rng, n, twice_m)
        .into_iter()
        .map(|v| v + 1)
        .collect();
    subset.sort_unstable();
    let gaps = gap_sequence_from_subset(&subset, n)?;

    let mut matching = Vec::new();
    let mut attempts = 0;
    while attempts < MATCHING_ATTEMPTS {
        let mut rng = seed.derive(1).derive(attempts as u64).rng();
        attempts += 1;
        let order = index::sample(&mut rng, twice_m, twice_m).into_vec();
        matching = order.chunks_exact(2).map(|p| (p[0], p[1])).collect();
        let on_cycle = |&(x, y): &(usize, usize)| {
            let d = x.abs_diff(y);
            d == 1 || d == twice_m - 1
        };
        if rule == MatchingRule::Unrestricted || !matching.iter().any(on_cycle) {
            break;
        }
        matching.clear();
    }
    if matching.is_empty() {
        return Err(Error::AttemptsExhausted {
            what: "matching avoiding the cycle on B".into(),
            attempts,
        });
    }
    let graph = subdivide(&gaps, &matching)?;
    Ok((
        graph,
        SubdivisionRecord {
            subset,
            matching,
            gaps: gaps.values().to_vec(),
            matching_attempts: attempts,
        },
    ))
}

/// Direct model: the cycle `0 - 1 - ... - (n-1) - 0` together with a uniform
/// `m`-edge matching on all `n` vertices. Returns the graph and the matching.
pub fn cycle_plus_matching(
    n: usize,
    m: usize,
    seed: Seed,
) -> Result<(Graph, Vec<(Vertex, Vertex)>)> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!(
            "cycle needs n >= 3, got {n}"
        )));
    }
    let matching = random_matching_edges(n, m, seed)?;
    let mut edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    edges.extend_from_slice(&matching);
    Ok((Graph::new(n, &edges)?, matching))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gap_examples() {
        let g = gap_sequence_from_subset(&[2, 5, 7, 8], 8).unwrap();
        assert_eq!(g.values(), &[2, 3, 2, 1, 0]);
        let g = gap_sequence_from_subset(&[1, 2, 3, 4], 4).unwrap();
        assert_eq!(g.values(), &[1, 1, 1, 1, 0]);
    }

    #[test]
    fn malformed_subsets() {
        assert!(gap_sequence_from_subset(&[], 4).is_err());
        assert!(gap_sequence_from_subset(&[1, 2, 3], 4).is_err());
        assert!(gap_sequence_from_subset(&[2, 1], 4).is_err());
        assert!(gap_sequence_from_subset(&[1, 1], 4).is_err());
        assert!(gap_sequence_from_subset(&[0, 2], 4).is_err());
        assert!(gap_sequence_from_subset(&[1, 5], 4).is_err());
        assert!(GapSequence::new(5, vec![1, 1, 1]).is_err());
        assert!(GapSequence::new(3, vec![1, 0, 2]).is_err());
    }

    #[test]
    fn round_trip_all_even_subsets_of_12() {
        let n = 12;
        let mut checked = 0;
        for mask in 1u32..(1 << n) {
            if mask.count_ones() % 2 == 1 {
                continue;
            }
            let b: Vec<usize> = (0..n)
                .filter(|&i| mask & (1 << i) != 0)
                .map(|i| i + 1)
                .collect();
            let gaps = gap_sequence_from_subset(&b, n).unwrap();
            assert_eq!(gaps.values().iter().sum::<usize>(), n);
            assert_eq!(subset_from_gap_sequence(&gaps), b);
            checked += 1;
        }
        assert_eq!(checked, (1 << 11) - 1);
    }

    #[test]
    fn subdivision_without_gaps_is_c4_plus_matching() {
        let gaps = GapSequence::new(4, vec![1, 1, 1, 1, 0]).unwrap();
        let diagonals = subdivide(&gaps, &[(0, 2), (1, 3)]).unwrap();
        assert_eq!(diagonals, Graph::complete(4));
        let on_cycle = subdivide(&gaps, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(on_cycle, Graph::cycle(4));
    }

    #[test]
    fn model_n100_edge_audit() {
        let (g, rec) = subdivide_cycle_model(100, Seed(12), MatchingRule::AvoidCycle).unwrap();
        assert_eq!(g.m(), 125);
        for i in 0..100 {
            assert!(g.has_edge(i, (i + 1) % 100));
        }
        let mut direct: Vec<_> = (0..100).map(|i| (i, (i + 1) % 100)).collect();
        direct.extend(rec.matching_edges());
        assert_eq!(g, Graph::new(100, &direct).unwrap());
        assert_eq!(
            subset_from_gap_sequence(&GapSequence::new(100, rec.gaps).unwrap()),
            rec.subset
        );
    }

    #[test]
    fn model_rejects_small_n() {
        assert!(subdivide_cycle_model(7, Seed(0), MatchingRule::AvoidCycle).is_err());
    }
}
