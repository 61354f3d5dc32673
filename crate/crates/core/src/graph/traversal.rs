use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use super::{Graph, Multigraph, Vertex};
use crate::error::{Error, Result};

/// Neighbourhood access shared by [`Graph`] and [`Multigraph`].
pub trait Adjacency {
    fn vertex_count(&self) -> usize;
    fn for_each_neighbour(&self, v: Vertex, f: impl FnMut(Vertex));
}

impl Adjacency for Graph {
    fn vertex_count(&self) -> usize {
        self.n()
    }

    fn for_each_neighbour(&self, v: Vertex, mut f: impl FnMut(Vertex)) {
        for &w in self.neighbours(v) {
            f(w);
        }
    }
}

impl Adjacency for Multigraph {
    fn vertex_count(&self) -> usize {
        self.n()
    }

    fn for_each_neighbour(&self, v: Vertex, mut f: impl FnMut(Vertex)) {
        for &e in self.incident(v) {
            f(self.other_end(e, v));
        }
    }
}

/// BFS distances from a root. `dist[v] == None` marks an unreachable vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistanceLayers {
    pub root: Vertex,
    pub dist: Vec<Option<usize>>,
    pub eccentricity: usize,
}

impl DistanceLayers {
    pub fn reaches_all(&self) -> bool {
        self.dist.iter().all(Option::is_some)
    }

    /// Vertices grouped by distance, layer 0 holding only the root.
    pub fn layers(&self) -> Vec<Vec<Vertex>> {
        let mut out = vec![Vec::new(); self.eccentricity + 1];
        for (v, d) in self.dist.iter().enumerate() {
            if let Some(d) = d {
                out[*d].push(v);
            }
        }
        out
    }
}

pub fn bfs_layers<G: Adjacency>(g: &G, root: Vertex) -> Result<DistanceLayers> {
    let n = g.vertex_count();
    if root >= n {
        return Err(Error::VertexOutOfRange { vertex: root, n });
    }
    let mut dist = vec![None; n];
    dist[root] = Some(0);
    let mut queue = VecDeque::from([root]);
    let mut eccentricity = 0;
    while let Some(u) = queue.pop_front() {
        let du = dist[u].expect("queued vertices have a distance");
        eccentricity = eccentricity.max(du);
        g.for_each_neighbour(u, |w| {
            if dist[w].is_none() {
                dist[w] = Some(du + 1);
                queue.push_back(w);
            }
        });
    }
    Ok(DistanceLayers {
        root,
        dist,
        eccentricity,
    })
}

/// Component label per vertex and the number of components. Labels are
/// assigned in order of each component's smallest vertex.
pub fn component_labels<G: Adjacency>(g: &G) -> (Vec<usize>, usize) {
    let n = g.vertex_count();
    let mut label = vec![usize::MAX; n];
    let mut count = 0;
    let mut stack = Vec::new();
    for s in 0..n {
        if label[s] != usize::MAX {
            continue;
        }
        label[s] = count;
        stack.push(s);
        while let Some(u) = stack.pop() {
            g.for_each_neighbour(u, |w| {
                if label[w] == usize::MAX {
                    label[w] = count;
                    stack.push(w);
                }
            });
        }
        count += 1;
    }
    (label, count)
}

/// Maximal connected vertex sets, each sorted, ordered by smallest member.
pub fn connected_components<G: Adjacency>(g: &G) -> Vec<Vec<Vertex>> {
    let (label, count) = component_labels(g);
    let mut out = vec![Vec::new(); count];
    for (v, &c) in label.iter().enumerate() {
        out[c].push(v);
    }
    out
}

/// Graphs on zero or one vertex count as connected.
pub fn is_connected<G: Adjacency>(g: &G) -> bool {
    component_labels(g).1 <= 1
}

/// Eccentricity of every vertex of a connected graph.
///
/// Runs 64 breadth-first searches at once: bit `k` of `frontier[u]` says
/// that `u` sits on the current BFS frontier of source `base + k`.
pub fn all_eccentricities(g: &Graph) -> Result<Vec<usize>> {
    if !is_connected(g) {
        return Err(Error::Disconnected);
    }
    let n = g.n();
    let mut ecc = vec![0usize; n];
    let mut visited = vec![0u64; n];
    let mut frontier = vec![0u64; n];
    let mut next = vec![0u64; n];
    for base in (0..n).step_by(64) {
        let width = (n - base).min(64);
        let full = if width == 64 {
            u64::MAX
        } else {
            (1u64 << width) - 1
        };
        visited.fill(0);
        frontier.fill(0);
        for k in 0..width {
            visited[base + k] = 1 << k;
            frontier[base + k] = 1 << k;
        }
        let mut round = 0;
        loop {
            round += 1;
            let mut grown = 0u64;
            for u in 0..n {
                if visited[u] == full {
                    next[u] = 0;
                    continue;
                }
                let mut reach = 0u64;
                for &w in g.neighbours(u) {
                    reach |= frontier[w];
                }
                let fresh = reach & !visited[u];
                next[u] = fresh;
                grown |= fresh;
            }
            if grown == 0 {
                break;
            }
            for u in 0..n {
                visited[u] |= next[u];
            }
            std::mem::swap(&mut frontier, &mut next);
            let mut bits = grown;
            while bits != 0 {
                let k = bits.trailing_zeros() as usize;
                ecc[base + k] = round;
                bits &= bits - 1;
            }
        }
    }
    Ok(ecc)
}

/// Largest shortest-path distance. Disconnected input is an error.
pub fn diameter(g: &Graph) -> Result<usize> {
    Ok(all_eccentricities(g)?.into_iter().max().unwrap_or(0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dists(g: &Graph, root: usize) -> Vec<usize> {
        bfs_layers(g, root)
            .unwrap()
            .dist
            .into_iter()
            .map(Option::unwrap)
            .collect()
    }

    #[test]
    fn bfs_examples() {
        assert_eq!(dists(&Graph::path(4), 0), vec![0, 1, 2, 3]);
        assert_eq!(dists(&Graph::cycle(4), 0), vec![0, 1, 2, 1]);
        assert_eq!(dists(&Graph::complete(4), 2), vec![1, 1, 0, 1]);
    }

    #[test]
    fn bfs_marks_unreachable_and_rejects_bad_root() {
        let g = Graph::new(3, &[(0, 1)]).unwrap();
        let layers = bfs_layers(&g, 0).unwrap();
        assert_eq!(layers.dist[2], None);
        assert!(!layers.reaches_all());
        assert!(bfs_layers(&g, 3).is_err());
    }

    #[test]
    fn diameter_examples() {
        assert_eq!(diameter(&Graph::cycle(6)).unwrap(), 3);
        for n in 1..10 {
            assert_eq!(diameter(&Graph::path(n)).unwrap(), n - 1);
        }
        assert_eq!(diameter(&Graph::petersen()).unwrap(), 2);
        assert!(matches!(
            diameter(&Graph::empty(2)),
            Err(Error::Disconnected)
        ));
    }

    #[test]
    fn eccentricities_past_one_word() {
        // 130 vertices spans three 64-source batches
        let g = Graph::path(130);
        let ecc = all_eccentricities(&g).unwrap();
        for (v, &e) in ecc.iter().enumerate() {
            assert_eq!(e, v.max(129 - v));
        }
    }

    #[test]
    fn component_examples() {
        let two_triangles =
            Graph::new(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap();
        assert_eq!(
            connected_components(&two_triangles),
            vec![vec![0, 1, 2], vec![3, 4, 5]]
        );
        assert_eq!(connected_components(&Graph::cycle(5)).len(), 1);
        assert_eq!(connected_components(&Graph::empty(4)).len(), 4);
    }

    #[test]
    fn multigraph_bfs_follows_parallel_and_loops() {
        let mg = Multigraph::new(3, &[(0, 0), (0, 1), (0, 1), (1, 2)]).unwrap();
        let layers = bfs_layers(&mg, 0).unwrap();
        assert_eq!(layers.dist, vec![Some(0), Some(1), Some(2)]);
    }
}
