//! Rainbow edge colourings from two connected spanning subgraphs.
//!
//! Given spanning connected `G1 = (V, E1)` and `G2 = (V, E2)` sharing the
//! edge set `B = E1 ∩ E2`, [`split_colouring`] gives every edge of `B` its
//! own colour and colours the rest by BFS layer boundaries around one root:
//! palette `a` for `G1`, palette `b` for `G2`. Walking shortest paths to the
//! root in `G1` from one end and in `G2` from the other, switching at the
//! first shared edge, yields a rainbow path for every pair.

mod expander;
mod min_degree;
mod regular;

pub use expander::{expander_split, ExpanderSplit};
pub use min_degree::{
    connect_components, euler_degree_split, rc_min_degree, MinDegreeColouring, MinDegreeReport,
};
pub use regular::{rc_random_regular, Decomposition, RegularColouring, RegularReport};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{all_eccentricities, bfs_layers, is_connected, Graph, Vertex};

/// Two spanning edge sets of `graph`, as sorted indices into `graph.edges()`.
#[derive(Debug, Clone)]
pub struct EdgeSplit {
    graph: Graph,
    edges1: Vec<usize>,
    edges2: Vec<usize>,
}

impl EdgeSplit {
    /// Validates that both `(V, edges1)` and `(V, edges2)` are connected.
    pub fn new(graph: Graph, mut edges1: Vec<usize>, mut edges2: Vec<usize>) -> Result<Self> {
        for (side, set) in [(1, &mut edges1), (2, &mut edges2)] {
            set.sort_unstable();
            set.dedup();
            if let Some(&bad) = set.iter().find(|&&e| e >= graph.m()) {
                return Err(Error::InvalidSplit(format!(
                    "edge index {bad} of side {side} is not an edge of the graph"
                )));
            }
            if !is_connected(&graph.spanning_subgraph(set)) {
                return Err(Error::InvalidSplit(format!(
                    "side {side} is not a connected spanning subgraph"
                )));
            }
        }
        Ok(EdgeSplit {
            graph,
            edges1,
            edges2,
        })
    }

    /// Like [`EdgeSplit::new`] with the sides given as vertex pairs.
    pub fn from_pairs(
        graph: Graph,
        side1: &[(Vertex, Vertex)],
        side2: &[(Vertex, Vertex)],
    ) -> Result<Self> {
        let index = |&(u, v): &(Vertex, Vertex)| {
            graph.edge_index(u, v).ok_or_else(|| {
                Error::InvalidSplit(format!("({u}, {v}) is not an edge of the graph"))
            })
        };
        let e1 = side1.iter().map(index).collect::<Result<Vec<_>>>()?;
        let e2 = side2.iter().map(index).collect::<Result<Vec<_>>>()?;
        Self::new(graph, e1, e2)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn edges1(&self) -> &[usize] {
        &self.edges1
    }

    pub fn edges2(&self) -> &[usize] {
        &self.edges2
    }

    /// `B = E1 ∩ E2`, sorted.
    pub fn shared(&self) -> Vec<usize> {
        let mut out = Vec::new();
        let (mut i, mut j) = (0, 0);
        while i < self.edges1.len() && j < self.edges2.len() {
            match self.edges1[i].cmp(&self.edges2[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    out.push(self.edges1[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        out
    }

    pub fn subgraph1(&self) -> Graph {
        self.graph.spanning_subgraph(&self.edges1)
    }

    pub fn subgraph2(&self) -> Graph {
        self.graph.spanning_subgraph(&self.edges2)
    }
}

/// Construction record of a layered edge colouring. Distances are BFS
/// distances from `root` in `G1` and `G2`; `palette_a[j - 1]` is the colour
/// of layer boundary `j` in `G1` (`None` if no edge ended up with it).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeCertificate {
    pub root: Vertex,
    pub edges1: Vec<(Vertex, Vertex)>,
    pub edges2: Vec<(Vertex, Vertex)>,
    pub dist1: Vec<usize>,
    pub dist2: Vec<usize>,
    pub shared: Vec<(Vertex, Vertex)>,
    pub palette_a: Vec<Option<u32>>,
    pub palette_b: Vec<Option<u32>>,
}

/// Colour per edge index of the coloured graph, dense ids `0..k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeColouring {
    pub colours: Vec<u32>,
    pub certificate: Option<EdgeCertificate>,
    /// Upper bound the construction guarantees, when it has one.
    pub bound: Option<usize>,
}

impl EdgeColouring {
    pub fn plain(colours: Vec<u32>) -> Self {
        EdgeColouring {
            colours,
            certificate: None,
            bound: None,
        }
    }

    /// Number of distinct colours.
    pub fn colour_count(&self) -> usize {
        let mut seen: Vec<u32> = self.colours.clone();
        seen.sort_unstable();
        seen.dedup();
        seen.len()
    }
}

/// A layered colouring with the quantities its bound is made of.
#[derive(Debug, Clone)]
pub struct SplitColouring {
    pub colouring: EdgeColouring,
    pub diam1: usize,
    pub diam2: usize,
    pub shared: usize,
    pub colours_used: usize,
}

impl SplitColouring {
    /// `diam(G1) + diam(G2) + |B|`.
    pub fn bound(&self) -> usize {
        self.diam1 + self.diam2 + self.shared
    }
}

/// The root minimizing `ecc1(v) + ecc2(v)`, lowest id on ties.
fn best_root(ecc1: &[usize], ecc2: &[usize]) -> Vertex {
    (0..ecc1.len())
        .min_by_key(|&v| (ecc1[v] + ecc2[v], v))
        .unwrap_or(0)
}

/// Maps raw palette ids onto dense ids, keeping their relative order.
pub(crate) fn densify(raw: &[u32], palette_len: usize) -> (Vec<u32>, Vec<Option<u32>>) {
    let mut used = vec![false; palette_len];
    for &c in raw {
        used[c as usize] = true;
    }
    let mut map = vec![None; palette_len];
    let mut next = 0u32;
    for (c, &u) in used.iter().enumerate() {
        if u {
            map[c] = Some(next);
            next += 1;
        }
    }
    let dense = raw
        .iter()
        .map(|&c| map[c as usize].expect("used"))
        .collect();
    (dense, map)
}

pub fn split_colouring(split: &EdgeSplit) -> Result<SplitColouring> {
    let g = split.graph();
    let n = g.n();
    if !is_connected(g) {
        return Err(Error::Disconnected);
    }
    let g1 = split.subgraph1();
    let g2 = split.subgraph2();
    let ecc1 = all_eccentricities(&g1)?;
    let ecc2 = all_eccentricities(&g2)?;
    let diam1 = ecc1.iter().copied().max().unwrap_or(0);
    let diam2 = ecc2.iter().copied().max().unwrap_or(0);
    let root = best_root(&ecc1, &ecc2);
    let dist1: Vec<usize> = bfs_layers(&g1, root)?
        .dist
        .into_iter()
        .map(|d| d.expect("connected"))
        .collect();
    let dist2: Vec<usize> = bfs_layers(&g2, root)?
        .dist
        .into_iter()
        .map(|d| d.expect("connected"))
        .collect();
    let (depth1, depth2) = (ecc1[root], ecc2[root]);

    let mut in1 = vec![false; g.m()];
    let mut in2 = vec![false; g.m()];
    split.edges1().iter().for_each(|&e| in1[e] = true);
    split.edges2().iter().for_each(|&e| in2[e] = true);

    let shared = split.shared();
    let b = shared.len();
    let a_colour = |j: usize| (b + j - 1) as u32;
    let b_colour = |j: usize| (b + depth1 + j - 1) as u32;
    let boundary = |dist: &[usize], (u, v): (Vertex, Vertex)| {
        if dist[u] == dist[v] {
            1
        } else {
            dist[u].max(dist[v])
        }
    };

    let mut raw = vec![0u32; g.m()];
    let mut next_shared = 0u32;
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        raw[e] = match (in1[e], in2[e]) {
            (true, true) => {
                next_shared += 1;
                next_shared - 1
            }
            (true, false) => a_colour(boundary(&dist1, (u, v))),
            (false, true) => b_colour(boundary(&dist2, (u, v))),
            // edges outside both subgraphs take a_1; no rainbow path uses them
            (false, false) => a_colour(1),
        };
    }
    let palette_len = b + depth1 + depth2;
    let (colours, map) = densify(&raw, palette_len.max(1));
    let colours_used = map.iter().flatten().count();
    let palette_a = (1..=depth1).map(|j| map[a_colour(j) as usize]).collect();
    let palette_b = (1..=depth2).map(|j| map[b_colour(j) as usize]).collect();

    let pairs = |ids: &[usize]| ids.iter().map(|&e| g.edge(e)).collect::<Vec<_>>();
    let certificate = EdgeCertificate {
        root,
        edges1: pairs(split.edges1()),
        edges2: pairs(split.edges2()),
        dist1,
        dist2,
        shared: pairs(&shared),
        palette_a,
        palette_b,
    };
    debug_assert!(n == 0 || colours_used <= depth1 + depth2 + b);
    let result = SplitColouring {
        colouring: EdgeColouring {
            colours,
            certificate: Some(certificate),
            bound: Some(diam1 + diam2 + b),
        },
        diam1,
        diam2,
        shared: b,
        colours_used,
    };
    if result.colours_used > result.bound() {
        return Err(Error::BoundViolation(format!(
            "{} colours exceed diam(G1) + diam(G2) + |B| = {}",
            result.colours_used,
            result.bound()
        )));
    }
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k2_single_shared_edge() {
        let g = Graph::complete(2);
        let split = EdgeSplit::new(g, vec![0], vec![0]).unwrap();
        let c = split_colouring(&split).unwrap();
        assert_eq!(c.colours_used, 1);
        assert_eq!(c.bound(), 3);
        assert_eq!(c.colouring.colours, vec![0]);
    }

    #[test]
    fn c4_split_respects_bound() {
        let split = EdgeSplit::from_pairs(
            Graph::cycle(4),
            &[(0, 1), (1, 2), (2, 3)],
            &[(0, 1), (0, 3), (2, 3)],
        )
        .unwrap();
        assert_eq!(split.shared().len(), 2);
        let c = split_colouring(&split).unwrap();
        assert_eq!((c.diam1, c.diam2, c.shared), (3, 3, 2));
        assert!(c.colours_used <= 8);
    }

    #[test]
    fn k4_star_and_path() {
        let split = EdgeSplit::from_pairs(
            Graph::complete(4),
            &[(0, 1), (0, 2), (0, 3)],
            &[(1, 2), (2, 3), (0, 1)],
        )
        .unwrap();
        let c = split_colouring(&split).unwrap();
        assert_eq!(c.shared, 1);
        assert_eq!(c.bound(), 6);
        assert!(c.colours_used <= 6);
    }

    #[test]
    fn palette_layout_is_shared_then_a_then_b() {
        let split = EdgeSplit::from_pairs(
            Graph::cycle(4),
            &[(0, 1), (1, 2), (2, 3)],
            &[(0, 1), (0, 3), (2, 3)],
        )
        .unwrap();
        let c = split_colouring(&split).unwrap();
        let cert = c.colouring.certificate.unwrap();
        let g = split.graph();
        let shared: Vec<u32> = cert
            .shared
            .iter()
            .map(|&(u, v)| c.colouring.colours[g.edge_index(u, v).unwrap()])
            .collect();
        assert_eq!(shared, vec![0, 1]);
        let a: Vec<u32> = cert.palette_a.iter().flatten().copied().collect();
        let b: Vec<u32> = cert.palette_b.iter().flatten().copied().collect();
        assert!(a.iter().all(|&x| x >= 2));
        assert!(a.iter().zip(a.iter().skip(1)).all(|(x, y)| x < y));
        if let (Some(&last_a), Some(&first_b)) = (a.last(), b.first()) {
            assert!(last_a < first_b);
        }
    }

    #[test]
    fn rejects_disconnected_side() {
        let err = EdgeSplit::from_pairs(
            Graph::cycle(4),
            &[(0, 1), (2, 3)],
            &[(0, 1), (1, 2), (2, 3)],
        )
        .unwrap_err();
        assert!(matches!(err, Error::InvalidSplit(_)));
        let err = EdgeSplit::from_pairs(Graph::cycle(4), &[(0, 2)], &[]).unwrap_err();
        assert!(matches!(err, Error::InvalidSplit(_)));
    }

    #[test]
    fn root_minimizes_eccentricity_sum() {
        assert_eq!(best_root(&[3, 2, 2, 3], &[1, 2, 1, 0]), 2);
        assert_eq!(best_root(&[1, 1], &[1, 1]), 0);
    }
}
