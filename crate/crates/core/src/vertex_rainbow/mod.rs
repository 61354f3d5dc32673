//! Rainbow vertex colourings from two overlapping connected vertex sets.
//!
//! For `V1 ∪ V2 = V` with both induced subgraphs connected and every vertex
//! of each side adjacent to the other, [`vertex_split_colouring`] gives each
//! shared vertex its own colour and colours the rest by BFS layer around an
//! adjacent pair of roots `v1 ∈ V1`, `v2 ∈ V2`. Random regular graphs of
//! degree at least 28 get such a split from [`lll_partition`] followed by
//! [`stitch_components`] on each side.

mod partition;
mod regular;
mod stitch;

pub use partition::{lll_partition, partition_violations, Partition, PartitionParams};
pub use regular::{
    rvc_colour_graph, rvc_random_regular, rvc_random_regular_with, RvcColouring, RvcReport,
};
pub use stitch::stitch_components;

use serde::{Deserialize, Serialize};

use crate::edge_rainbow::densify;
use crate::error::{Error, Result};
use crate::graph::{all_eccentricities, bfs_layers, is_connected, Graph, Vertex};

#[derive(Debug, Clone)]
pub struct VertexSplit {
    graph: Graph,
    side1: Vec<bool>,
    side2: Vec<bool>,
}

impl VertexSplit {
    /// Checks that the sides cover `V` (condition 1), that every vertex of
    /// each side has a neighbour on the other (3) and that both induced
    /// subgraphs are connected (4). The overlap size is whatever it is.
    pub fn from_masks(graph: Graph, side1: Vec<bool>, side2: Vec<bool>) -> Result<Self> {
        let n = graph.n();
        if side1.len() != n || side2.len() != n {
            return Err(Error::MalformedSubset(format!(
                "side masks have {} and {} entries for {n} vertices",
                side1.len(),
                side2.len()
            )));
        }
        if let Some(v) = (0..n).find(|&v| !side1[v] && !side2[v]) {
            return Err(Error::SplitCondition {
                condition: 1,
                detail: format!("vertex {v} is in neither side"),
            });
        }
        for (side, own, other) in [(1, &side1, &side2), (2, &side2, &side1)] {
            if let Some(v) =
                (0..n).find(|&v| own[v] && !graph.neighbours(v).iter().any(|&w| other[w]))
            {
                return Err(Error::SplitCondition {
                    condition: 3,
                    detail: format!("vertex {v} of side {side} has no neighbour in the other side"),
                });
            }
        }
        for (side, own) in [(1, &side1), (2, &side2)] {
            if !is_connected(&graph.induced_subgraph(own).0) {
                return Err(Error::SplitCondition {
                    condition: 4,
                    detail: format!("side {side} does not induce a connected subgraph"),
                });
            }
        }
        Ok(VertexSplit {
            graph,
            side1,
            side2,
        })
    }

    pub fn new(graph: Graph, side1: &[Vertex], side2: &[Vertex]) -> Result<Self> {
        let n = graph.n();
        let mask = |set: &[Vertex]| {
            let mut m = vec![false; n];
            for &v in set {
                if v >= n {
                    return Err(Error::VertexOutOfRange { vertex: v, n });
                }
                m[v] = true;
            }
            Ok(m)
        };
        let (m1, m2) = (mask(side1)?, mask(side2)?);
        Self::from_masks(graph, m1, m2)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn side1(&self) -> &[bool] {
        &self.side1
    }

    pub fn side2(&self) -> &[bool] {
        &self.side2
    }

    /// `B = V1 ∩ V2`, sorted.
    pub fn shared(&self) -> Vec<Vertex> {
        (0..self.graph.n())
            .filter(|&v| self.side1[v] && self.side2[v])
            .collect()
    }
}

/// Construction record of a layered vertex colouring. `dist1[v]` is the
/// distance from `v1` in `G[V1]` (`None` off `V1`), and `palette_a[j]` the
/// colour of layer `j ≥ 0` (`None` if only shared vertices sit there).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexCertificate {
    pub v1: Vertex,
    pub v2: Vertex,
    pub side1: Vec<Vertex>,
    pub side2: Vec<Vertex>,
    pub dist1: Vec<Option<usize>>,
    pub dist2: Vec<Option<usize>>,
    pub shared: Vec<Vertex>,
    pub palette_a: Vec<Option<u32>>,
    pub palette_b: Vec<Option<u32>>,
}

/// Colour per vertex, dense ids `0..k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexColouring {
    pub colours: Vec<u32>,
    pub certificate: Option<VertexCertificate>,
    pub bound: Option<usize>,
}

impl VertexColouring {
    pub fn plain(colours: Vec<u32>) -> Self {
        VertexColouring {
            colours,
            certificate: None,
            bound: None,
        }
    }

    pub fn colour_count(&self) -> usize {
        let mut seen = self.colours.clone();
        seen.sort_unstable();
        seen.dedup();
        seen.len()
    }
}

#[derive(Debug, Clone)]
pub struct VertexSplitColouring {
    pub colouring: VertexColouring,
    pub diam1: usize,
    pub diam2: usize,
    pub shared: usize,
    pub colours_used: usize,
}

impl VertexSplitColouring {
    /// `diam(G[V1]) + diam(G[V2]) + |B| + 2`.
    pub fn bound(&self) -> usize {
        self.diam1 + self.diam2 + self.shared + 2
    }
}

/// Eccentricities in `G[side]`, indexed by original vertex (0 off the side),
/// and the side's diameter.
fn side_eccentricities(g: &Graph, side: &[bool]) -> Result<(Vec<usize>, usize)> {
    let (induced, original) = g.induced_subgraph(side);
    let local = all_eccentricities(&induced)?;
    let mut ecc = vec![0; g.n()];
    for (i, &v) in original.iter().enumerate() {
        ecc[v] = local[i];
    }
    Ok((ecc, local.into_iter().max().unwrap_or(0)))
}

fn side_distances(g: &Graph, side: &[bool], root: Vertex) -> Result<Vec<Option<usize>>> {
    let (induced, original) = g.induced_subgraph(side);
    let local_root = original
        .binary_search(&root)
        .expect("root lies on its side");
    let layers = bfs_layers(&induced, local_root)?;
    let mut dist = vec![None; g.n()];
    for (i, &v) in original.iter().enumerate() {
        dist[v] = layers.dist[i];
    }
    Ok(dist)
}

pub fn vertex_split_colouring(split: &VertexSplit) -> Result<VertexSplitColouring> {
    let g = split.graph();
    let (s1, s2) = (split.side1(), split.side2());
    let (ecc1, diam1) = side_eccentricities(g, s1)?;
    let (ecc2, diam2) = side_eccentricities(g, s2)?;

    let mut roots = None;
    for &(x, y) in g.edges() {
        for (a, b) in [(x, y), (y, x)] {
            if s1[a] && s2[b] {
                let key = (ecc1[a] + ecc2[b], a, b);
                if roots.is_none_or(|best| key < best) {
                    roots = Some(key);
                }
            }
        }
    }
    let (_, v1, v2) = roots.ok_or_else(|| Error::SplitCondition {
        condition: 3,
        detail: "no edge joins the two sides".into(),
    })?;
    let dist1 = side_distances(g, s1, v1)?;
    let dist2 = side_distances(g, s2, v2)?;
    let (depth1, depth2) = (ecc1[v1], ecc2[v2]);

    let shared = split.shared();
    let b = shared.len();
    let a_colour = |j: usize| (b + j) as u32;
    let b_colour = |j: usize| (b + depth1 + 1 + j) as u32;
    let mut raw = vec![0u32; g.n()];
    let mut next_shared = 0u32;
    for v in 0..g.n() {
        raw[v] = if s1[v] && s2[v] {
            next_shared += 1;
            next_shared - 1
        } else if s1[v] {
            a_colour(dist1[v].expect("connected side"))
        } else {
            b_colour(dist2[v].expect("connected side"))
        };
    }
    let palette_len = b + depth1 + depth2 + 2;
    let (colours, map) = densify(&raw, palette_len);
    let colours_used = map.iter().flatten().count();
    let palette_a = (0..=depth1).map(|j| map[a_colour(j) as usize]).collect();
    let palette_b = (0..=depth2).map(|j| map[b_colour(j) as usize]).collect();

    let members = |side: &[bool]| (0..g.n()).filter(|&v| side[v]).collect::<Vec<_>>();
    let certificate = VertexCertificate {
        v1,
        v2,
        side1: members(s1),
        side2: members(s2),
        dist1,
        dist2,
        shared,
        palette_a,
        palette_b,
    };
    let result = VertexSplitColouring {
        colouring: VertexColouring {
            colours,
            certificate: Some(certificate),
            bound: Some(diam1 + diam2 + b + 2),
        },
        diam1,
        diam2,
        shared: b,
        colours_used,
    };
    if result.colours_used > result.bound() {
        return Err(Error::BoundViolation(format!(
            "{} colours exceed diam(G[V1]) + diam(G[V2]) + |B| + 2 = {}",
            result.colours_used,
            result.bound()
        )));
    }
    Ok(result)
}
