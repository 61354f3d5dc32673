use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{shortcut, Method, VerifyReport, Witness};
use crate::edge_rainbow::{EdgeCertificate, EdgeColouring};
use crate::error::{Error, Result};
use crate::graph::{bfs_layers, ordered, Graph, Vertex};
use crate::random::Seed;
use crate::vertex_rainbow::{VertexCertificate, VertexColouring};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum PairSelection {
    All,
    /// `k` pairs of distinct vertices drawn uniformly with replacement.
    Sample {
        k: usize,
        seed: Seed,
    },
}

impl PairSelection {
    fn method(&self) -> Method {
        match self {
            PairSelection::All => Method::Certificate,
            PairSelection::Sample { .. } => Method::Sampled,
        }
    }

    /// Calls `f` on each selected pair until it returns `false`; returns the
    /// number of pairs visited.
    fn for_each(&self, n: usize, mut f: impl FnMut(Vertex, Vertex) -> bool) -> usize {
        let mut count = 0;
        match *self {
            PairSelection::All => {
                for x in 0..n {
                    for y in x + 1..n {
                        count += 1;
                        if !f(x, y) {
                            return count;
                        }
                    }
                }
            }
            PairSelection::Sample { k, seed } => {
                if n < 2 {
                    return 0;
                }
                let mut rng = seed.rng();
                for _ in 0..k {
                    let x = rng.gen_range(0..n);
                    let mut y = rng.gen_range(0..n - 1);
                    if y >= x {
                        y += 1;
                    }
                    count += 1;
                    if !f(x.min(y), x.max(y)) {
                        return count;
                    }
                }
            }
        }
        count
    }
}

fn inconsistent(msg: impl Into<String>) -> Error {
    Error::Certificate(msg.into())
}

/// BFS parent pointers towards `root` within `g`, with `dist` checked
/// against a fresh BFS. The parent is the lowest-id neighbour one layer down.
fn parents_from(
    g: &Graph,
    root: Vertex,
    dist: &[Option<usize>],
    what: &str,
) -> Result<Vec<Vertex>> {
    let fresh = bfs_layers(g, root)?;
    if let Some(v) = (0..g.n()).find(|&v| fresh.dist[v] != dist[v]) {
        return Err(inconsistent(format!(
            "{what}: stored distance of vertex {v} is {:?}, BFS gives {:?}",
            dist[v], fresh.dist[v]
        )));
    }
    Ok((0..g.n())
        .map(|v| match dist[v] {
            Some(0) | None => v,
            Some(d) => *g
                .neighbours(v)
                .iter()
                .find(|&&w| dist[w] == Some(d - 1))
                .expect("BFS layers have a parent"),
        })
        .collect())
}

fn climb(parent: &[Vertex], mut v: Vertex) -> Vec<Vertex> {
    let mut path = vec![v];
    while parent[v] != v {
        v = parent[v];
        path.push(v);
    }
    path
}

/// Joins `p1` (from `x`) with `p2` read backwards (towards `y`). With
/// `meet_at = (i, j)`, where `p1[i] == p2[j]`, the walk switches there;
/// otherwise the two are concatenated end to end.
fn splice(p1: &[Vertex], p2: &[Vertex], meet_at: Option<(usize, usize)>) -> Vec<Vertex> {
    let mut walk: Vec<Vertex> = Vec::with_capacity(p1.len() + p2.len());
    match meet_at {
        Some((i, j)) => {
            walk.extend_from_slice(&p1[..=i]);
            walk.extend(p2[..j].iter().rev());
        }
        None => {
            walk.extend_from_slice(p1);
            walk.extend(p2.iter().rev());
        }
    }
    shortcut(&walk)
}

struct EdgeReplay<'a> {
    g: &'a Graph,
    colours: &'a [u32],
    parent1: Vec<Vertex>,
    parent2: Vec<Vertex>,
}

impl<'a> EdgeReplay<'a> {
    fn new(g: &'a Graph, col: &'a EdgeColouring) -> Result<Self> {
        let cert: &EdgeCertificate = col
            .certificate
            .as_ref()
            .ok_or_else(|| inconsistent("colouring carries no certificate"))?;
        let n = g.n();
        if col.colours.len() != g.m() {
            return Err(inconsistent(format!(
                "{} colours for {} edges",
                col.colours.len(),
                g.m()
            )));
        }
        if cert.root >= n || cert.dist1.len() != n || cert.dist2.len() != n {
            return Err(inconsistent("root or layer arrays do not match the graph"));
        }
        let ids = |pairs: &[(Vertex, Vertex)], side: u8| -> Result<Vec<usize>> {
            let mut out = Vec::with_capacity(pairs.len());
            for &(u, v) in pairs {
                let e = (u < n && v < n)
                    .then(|| g.edge_index(u, v))
                    .flatten()
                    .ok_or_else(|| {
                        inconsistent(format!("({u}, {v}) of side {side} is not an edge"))
                    })?;
                out.push(e);
            }
            out.sort_unstable();
            out.dedup();
            Ok(out)
        };
        let e1 = ids(&cert.edges1, 1)?;
        let e2 = ids(&cert.edges2, 2)?;
        let shared: Vec<usize> = e1
            .iter()
            .copied()
            .filter(|e| e2.binary_search(e).is_ok())
            .collect();
        let mut claimed: Vec<(Vertex, Vertex)> =
            cert.shared.iter().map(|&(u, v)| ordered(u, v)).collect();
        claimed.sort_unstable();
        let actual: Vec<(Vertex, Vertex)> = shared.iter().map(|&e| g.edge(e)).collect();
        if claimed != actual {
            return Err(inconsistent("shared edge list differs from E1 ∩ E2"));
        }
        let wrap = |d: &[usize]| d.iter().map(|&x| Some(x)).collect::<Vec<_>>();
        let parent1 = parents_from(
            &g.spanning_subgraph(&e1),
            cert.root,
            &wrap(&cert.dist1),
            "G1",
        )?;
        let parent2 = parents_from(
            &g.spanning_subgraph(&e2),
            cert.root,
            &wrap(&cert.dist2),
            "G2",
        )?;
        Ok(EdgeReplay {
            g,
            colours: &col.colours,
            parent1,
            parent2,
        })
    }

    fn path(&self, x: Vertex, y: Vertex) -> Vec<Vertex> {
        let p1 = climb(&self.parent1, x);
        let p2 = climb(&self.parent2, y);
        // first edge of P1 that P2 also uses; switch at its near end.
        // Root paths are short, so linear scans beat hashing here.
        let meet = p1.windows(2).enumerate().find_map(|(i, w)| {
            let e = ordered(w[0], w[1]);
            p2.windows(2)
                .position(|u| ordered(u[0], u[1]) == e)
                .map(|j| (i, if p2[j] == w[0] { j } else { j + 1 }))
        });
        splice(&p1, &p2, meet)
    }

    fn judge(&self, x: Vertex, y: Vertex, path: &[Vertex]) -> Option<String> {
        if path.first() != Some(&x) || path.last() != Some(&y) {
            return Some("constructed path has the wrong endpoints".into());
        }
        let mut seen = Vec::with_capacity(path.len());
        for w in path.windows(2) {
            let Some(e) = self.g.edge_index(w[0], w[1]) else {
                return Some(format!("({}, {}) is not an edge", w[0], w[1]));
            };
            if seen.contains(&self.colours[e]) {
                return Some(format!("colour {} repeats on the path", self.colours[e]));
            }
            seen.push(self.colours[e]);
        }
        None
    }
}

struct VertexReplay<'a> {
    g: &'a Graph,
    colours: &'a [u32],
    in1: Vec<bool>,
    in2: Vec<bool>,
    parent1: Vec<Vertex>,
    parent2: Vec<Vertex>,
    v1: Vertex,
    v2: Vertex,
    /// Lowest-id neighbour on the other side.
    across: Vec<Vertex>,
}

impl<'a> VertexReplay<'a> {
    fn new(g: &'a Graph, col: &'a VertexColouring) -> Result<Self> {
        let cert: &VertexCertificate = col
            .certificate
            .as_ref()
            .ok_or_else(|| inconsistent("colouring carries no certificate"))?;
        let n = g.n();
        if col.colours.len() != n {
            return Err(inconsistent(format!(
                "{} colours for {n} vertices",
                col.colours.len()
            )));
        }
        if cert.dist1.len() != n || cert.dist2.len() != n {
            return Err(inconsistent("layer arrays do not match the graph"));
        }
        let mask = |set: &[Vertex]| -> Result<Vec<bool>> {
            let mut m = vec![false; n];
            for &v in set {
                *m.get_mut(v)
                    .ok_or_else(|| inconsistent(format!("vertex {v} out of range")))? = true;
            }
            Ok(m)
        };
        let in1 = mask(&cert.side1)?;
        let in2 = mask(&cert.side2)?;
        if let Some(v) = (0..n).find(|&v| !in1[v] && !in2[v]) {
            return Err(inconsistent(format!("vertex {v} is on neither side")));
        }
        let (v1, v2) = (cert.v1, cert.v2);
        if v1 >= n || v2 >= n || !in1[v1] || !in2[v2] || !g.has_edge(v1, v2) {
            return Err(inconsistent(
                "roots must be adjacent, v1 in V1 and v2 in V2",
            ));
        }
        let shared: Vec<Vertex> = (0..n).filter(|&v| in1[v] && in2[v]).collect();
        let mut claimed = cert.shared.clone();
        claimed.sort_unstable();
        if claimed != shared {
            return Err(inconsistent("shared vertex list differs from V1 ∩ V2"));
        }
        let mut across = vec![usize::MAX; n];
        for v in 0..n {
            let other = if in1[v] { &in2 } else { &in1 };
            match g.neighbours(v).iter().find(|&&w| other[w]) {
                Some(&w) => across[v] = w,
                None => return Err(inconsistent(format!("vertex {v} has no neighbour across"))),
            }
        }
        let side_parents = |keep: &[bool], root: Vertex, dist: &[Option<usize>], what: &str| {
            // BFS inside G[side] on original labels: drop edges leaving the side
            let ids: Vec<usize> = g
                .edges()
                .iter()
                .enumerate()
                .filter(|(_, &(u, v))| keep[u] && keep[v])
                .map(|(e, _)| e)
                .collect();
            parents_from(&g.spanning_subgraph(&ids), root, dist, what)
        };
        let parent1 = side_parents(&in1, v1, &cert.dist1, "G[V1]")?;
        let parent2 = side_parents(&in2, v2, &cert.dist2, "G[V2]")?;
        Ok(VertexReplay {
            g,
            colours: &col.colours,
            in1,
            in2,
            parent1,
            parent2,
            v1,
            v2,
            across,
        })
    }

    /// `a ∈ V1`, `b ∈ V2`.
    fn core(&self, a: Vertex, b: Vertex) -> Vec<Vertex> {
        let p1 = climb(&self.parent1, a);
        let p2 = climb(&self.parent2, b);
        debug_assert_eq!(p1.last(), Some(&self.v1));
        debug_assert_eq!(p2.last(), Some(&self.v2));
        let meet = p1
            .iter()
            .enumerate()
            .find_map(|(i, v)| p2.iter().position(|w| w == v).map(|j| (i, j)));
        splice(&p1, &p2, meet)
    }

    fn path(&self, x: Vertex, y: Vertex) -> Vec<Vertex> {
        let walk = if self.in1[x] && self.in2[y] {
            self.core(x, y)
        } else if self.in1[y] && self.in2[x] {
            let mut p = self.core(y, x);
            p.reverse();
            p
        } else if self.in1[x] {
            // both only in V1: enter V2 from y's side
            let mut p = self.core(x, self.across[y]);
            p.push(y);
            p
        } else {
            // both only in V2
            let mut p = vec![x];
            p.extend(self.core(self.across[x], y));
            p
        };
        shortcut(&walk)
    }

    fn judge(&self, x: Vertex, y: Vertex, path: &[Vertex]) -> Option<String> {
        if path.first() != Some(&x) || path.last() != Some(&y) {
            return Some("constructed path has the wrong endpoints".into());
        }
        if let Some(w) = path.windows(2).find(|w| !self.g.has_edge(w[0], w[1])) {
            return Some(format!("({}, {}) is not an edge", w[0], w[1]));
        }
        let mut seen = Vec::with_capacity(path.len());
        for &v in &path[1..path.len() - 1] {
            if seen.contains(&self.colours[v]) {
                return Some(format!("colour {} repeats on the path", self.colours[v]));
            }
            seen.push(self.colours[v]);
        }
        None
    }
}

fn run(
    n: usize,
    pairs: PairSelection,
    build: impl Fn(Vertex, Vertex) -> Vec<Vertex>,
    judge: impl Fn(Vertex, Vertex, &[Vertex]) -> Option<String>,
) -> VerifyReport {
    let mut witness = None;
    let checked = pairs.for_each(n, |x, y| {
        let path = build(x, y);
        match judge(x, y, &path) {
            None => true,
            Some(explanation) => {
                witness = Some(Witness {
                    pair: (x, y),
                    explanation,
                    path: Some(path),
                });
                false
            }
        }
    });
    match witness {
        None => VerifyReport::pass(pairs.method(), checked),
        Some(w) => VerifyReport::fail(pairs.method(), checked, w),
    }
}

/// Replays the layered construction for the selected pairs: shortest paths
/// to the root in `G1` from one end and `G2` from the other, switching at
/// the first edge both use.
pub fn check_edge_certificate(
    g: &Graph,
    col: &EdgeColouring,
    pairs: PairSelection,
) -> Result<VerifyReport> {
    let replay = EdgeReplay::new(g, col)?;
    Ok(run(
        g.n(),
        pairs,
        |x, y| replay.path(x, y),
        |x, y, p| replay.judge(x, y, p),
    ))
}

/// Vertex analogue: paths to `v1` in `G[V1]` and to `v2` in `G[V2]` joined
/// by the root edge or at their first common vertex; an endpoint on the
/// wrong side first steps to a neighbour across.
pub fn check_vertex_certificate(
    g: &Graph,
    col: &VertexColouring,
    pairs: PairSelection,
) -> Result<VerifyReport> {
    let replay = VertexReplay::new(g, col)?;
    Ok(run(
        g.n(),
        pairs,
        |x, y| replay.path(x, y),
        |x, y, p| replay.judge(x, y, p),
    ))
}

pub fn edge_certificate_path(
    g: &Graph,
    col: &EdgeColouring,
    x: Vertex,
    y: Vertex,
) -> Result<Vec<Vertex>> {
    Ok(EdgeReplay::new(g, col)?.path(x, y))
}

pub fn vertex_certificate_path(
    g: &Graph,
    col: &VertexColouring,
    x: Vertex,
    y: Vertex,
) -> Result<Vec<Vertex>> {
    Ok(VertexReplay::new(g, col)?.path(x, y))
}
