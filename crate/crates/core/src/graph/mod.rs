//! Simple graphs and multigraphs on dense vertex ids `0..n`.
//!
//! [`Graph`] is immutable after construction: edges are stored once as
//! normalized `(u, v)` pairs with `u < v`, sorted, so an edge's position in
//! [`Graph::edges`] is a stable index that colourings and splits refer to.

mod euler;
mod expansion;
mod io;
mod traversal;

pub use euler::euler_circuit;
pub use expansion::{
    edge_expansion_exact, edge_expansion_sampled, out_degree_count, Expansion,
    DEFAULT_EXPANSION_CAP,
};
pub use io::{parse_edge_list, to_dot, to_dot_labelled, write_edge_list};
pub use traversal::{
    all_eccentricities, bfs_layers, component_labels, connected_components, diameter, is_connected,
    Adjacency, DistanceLayers,
};

use crate::error::{Error, Result};

pub type Vertex = usize;

/// Normalizes an unordered pair so that the smaller endpoint comes first.
#[inline]
pub fn ordered(u: Vertex, v: Vertex) -> (Vertex, Vertex) {
    if u <= v {
        (u, v)
    } else {
        (v, u)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(Vertex, Vertex)>,
    adj: Vec<Vec<Vertex>>,
}

impl Graph {
    /// Builds a simple graph. Duplicate pairs (in either orientation) are
    /// collapsed; self-loops and out-of-range endpoints are rejected.
    pub fn new(n: usize, edge_list: &[(Vertex, Vertex)]) -> Result<Self> {
        let mut edges = Vec::with_capacity(edge_list.len());
        for &(u, v) in edge_list {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            edges.push(ordered(u, v));
        }
        edges.sort_unstable();
        edges.dedup();
        Ok(Self::from_sorted_edges(n, edges))
    }

    fn from_sorted_edges(n: usize, edges: Vec<(Vertex, Vertex)>) -> Self {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Graph { n, edges, adj }
    }

    pub fn empty(n: usize) -> Self {
        Self::from_sorted_edges(n, Vec::new())
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        Self::from_sorted_edges(n, edges)
    }

    /// Cycle `0 - 1 - ... - (n-1) - 0`; `n >= 3`.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycle needs at least 3 vertices");
        let list: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Self::new(n, &list).expect("cycle edges are valid")
    }

    pub fn path(n: usize) -> Self {
        let list: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::new(n, &list).expect("path edges are valid")
    }

    pub fn star(n: usize) -> Self {
        let list: Vec<_> = (1..n).map(|i| (0, i)).collect();
        Self::new(n, &list).expect("star edges are valid")
    }

    /// Circulant graph: `i ~ i ± s` for every `s` in `offsets`.
    pub fn circulant(n: usize, offsets: &[usize]) -> Result<Self> {
        let mut list = Vec::new();
        for i in 0..n {
            for &s in offsets {
                if s == 0 || s >= n {
                    return Err(Error::InvalidParameter(format!(
                        "circulant offset {s} invalid for n = {n}"
                    )));
                }
                list.push((i, (i + s) % n));
            }
        }
        Self::new(n, &list)
    }

    pub fn petersen() -> Self {
        let mut list = Vec::new();
        for i in 0..5 {
            list.push((i, (i + 1) % 5));
            list.push((i, i + 5));
            list.push((5 + i, 5 + (i + 2) % 5));
        }
        Self::new(10, &list).expect("petersen edges are valid")
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    #[inline]
    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    #[inline]
    pub fn edge(&self, index: usize) -> (Vertex, Vertex) {
        self.edges[index]
    }

    #[inline]
    pub fn neighbours(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    /// Minimum degree; 0 for the graph on no vertices.
    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Returns `Some(r)` when every vertex has degree `r`.
    pub fn regular_degree(&self) -> Option<usize> {
        let r = self.adj.first().map_or(0, Vec::len);
        self.adj.iter().all(|a| a.len() == r).then_some(r)
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n && v < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    /// Index of the edge `{u, v}` in [`Graph::edges`].
    pub fn edge_index(&self, u: Vertex, v: Vertex) -> Option<usize> {
        self.edges.binary_search(&ordered(u, v)).ok()
    }

    /// Spanning subgraph `(V, F)` for the given edge indices.
    pub fn spanning_subgraph(&self, edge_ids: &[usize]) -> Graph {
        let mut edges: Vec<_> = edge_ids.iter().map(|&i| self.edges[i]).collect();
        edges.sort_unstable();
        edges.dedup();
        Self::from_sorted_edges(self.n, edges)
    }

    /// Induced subgraph on the vertices with `keep[v] == true`, relabelled
    /// densely in increasing order. Returns the subgraph and the map from new
    /// ids back to original vertices.
    pub fn induced_subgraph(&self, keep: &[bool]) -> (Graph, Vec<Vertex>) {
        assert_eq!(keep.len(), self.n);
        let original: Vec<Vertex> = (0..self.n).filter(|&v| keep[v]).collect();
        let mut relabel = vec![usize::MAX; self.n];
        for (new, &old) in original.iter().enumerate() {
            relabel[old] = new;
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(u, v)| keep[u] && keep[v])
            .map(|&(u, v)| (relabel[u], relabel[v]))
            .collect();
        (Self::from_sorted_edges(original.len(), edges), original)
    }

    /// Union of edge sets on the same vertex set.
    pub fn union(&self, other: &Graph) -> Result<Graph> {
        if self.n != other.n {
            return Err(Error::InvalidParameter(format!(
                "union of graphs on {} and {} vertices",
                self.n, other.n
            )));
        }
        let mut edges = self.edges.clone();
        edges.extend_from_slice(&other.edges);
        edges.sort_unstable();
        edges.dedup();
        Ok(Self::from_sorted_edges(self.n, edges))
    }

    /// Number of edges with both endpoints in `set`.
    pub fn edges_within(&self, set: &[bool]) -> usize {
        self.edges
            .iter()
            .filter(|&&(u, v)| set[u] && set[v])
            .count()
    }
}

/// Multigraph with loops and parallel edges. Edge `i` is `edges()[i]`; the
/// index is stable and dense. A loop contributes 2 to its vertex's degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Multigraph {
    n: usize,
    edges: Vec<(Vertex, Vertex)>,
    incident: Vec<Vec<usize>>,
}

impl Multigraph {
    pub fn new(n: usize, edge_list: &[(Vertex, Vertex)]) -> Result<Self> {
        let mut incident = vec![Vec::new(); n];
        for (i, &(u, v)) in edge_list.iter().enumerate() {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            incident[u].push(i);
            // a loop is listed twice so that degree counts it twice
            incident[v].push(i);
        }
        Ok(Multigraph {
            n,
            edges: edge_list.to_vec(),
            incident,
        })
    }

    pub fn from_graph(g: &Graph) -> Self {
        Self::new(g.n(), g.edges()).expect("graph edges are in range")
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    #[inline]
    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    /// Edge indices incident to `v`; loops appear twice.
    #[inline]
    pub fn incident(&self, v: Vertex) -> &[usize] {
        &self.incident[v]
    }

    #[inline]
    pub fn degree(&self, v: Vertex) -> usize {
        self.incident[v].len()
    }

    #[inline]
    pub fn other_end(&self, edge: usize, from: Vertex) -> Vertex {
        let (u, v) = self.edges[edge];
        if u == from {
            v
        } else {
            u
        }
    }

    pub fn loop_count(&self) -> usize {
        self.edges.iter().filter(|(u, v)| u == v).count()
    }

    /// True when there are no loops and no parallel edges.
    pub fn is_simple(&self) -> bool {
        let mut seen: Vec<_> = self.edges.iter().map(|&(u, v)| ordered(u, v)).collect();
        if seen.iter().any(|(u, v)| u == v) {
            return false;
        }
        seen.sort_unstable();
        seen.windows(2).all(|w| w[0] != w[1])
    }

    /// The maximal simple subgraph: loops dropped, parallel edges merged.
    pub fn simplify(&self) -> Graph {
        let list: Vec<_> = self.edges.iter().copied().filter(|(u, v)| u != v).collect();
        Graph::new(self.n, &list).expect("loops filtered, endpoints in range")
    }

    /// Converts to a [`Graph`] if the multigraph is simple.
    pub fn to_simple(&self) -> Option<Graph> {
        self.is_simple().then(|| self.simplify())
    }
}
