use std::collections::{HashMap, HashSet};

use super::{Method, VerifyReport, Witness};
use crate::edge_rainbow::EdgeColouring;
use crate::error::{Error, Result};
use crate::graph::{is_connected, Graph, Vertex};
use crate::vertex_rainbow::VertexColouring;

/// Exact checks run when `n` is at most this...
pub const EXACT_N_GUARD: usize = 14;
/// ...or when the colouring uses at most this many colours.
pub const EXACT_COLOUR_GUARD: usize = 20;

type State = (Vertex, u128);

/// Colour ids relabelled densely, and their number.
fn dense_ids(colours: &[u32]) -> (Vec<u8>, usize) {
    let mut distinct = colours.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    let ids = colours
        .iter()
        .map(|c| distinct.binary_search(c).expect("present") as u8)
        .collect();
    (ids, distinct.len())
}

fn guard(n: usize, colours: usize) -> Result<()> {
    if (n <= EXACT_N_GUARD || colours <= EXACT_COLOUR_GUARD) && colours <= 128 {
        Ok(())
    } else {
        Err(Error::GuardExceeded(format!(
            "exact search needs n <= {EXACT_N_GUARD} or at most {EXACT_COLOUR_GUARD} colours; \
             got n = {n} with {colours} colours"
        )))
    }
}

/// `step(s, u, used, emit)` calls `emit(w, used')` for each move out of `u`
/// in a search started at `s`.
type Step<'a> = dyn Fn(Vertex, Vertex, u128, &mut dyn FnMut(Vertex, u128)) + 'a;

/// One search from `s` over `(vertex, colours used so far)`. A walk with
/// distinct colours shortcuts to a path with distinct colours, so walks are
/// explored freely. With `target` set, returns a rainbow path to it;
/// otherwise marks every reachable vertex.
struct Search<'a> {
    step: &'a Step<'a>,
    n: usize,
}

impl Search<'_> {
    fn run(&self, s: Vertex, target: Option<Vertex>) -> (Vec<bool>, Option<Vec<Vertex>>) {
        let mut reached = vec![false; self.n];
        reached[s] = true;
        let mut left = self.n - 1;
        let mut seen: HashSet<State> = HashSet::new();
        let mut parent: HashMap<State, State> = HashMap::new();
        let mut stack = vec![(s, 0u128)];
        seen.insert((s, 0));
        while let Some((u, mask)) = stack.pop() {
            let mut found = None;
            (self.step)(s, u, mask, &mut |w, next| {
                if found.is_some() || w == s {
                    return;
                }
                if !reached[w] {
                    reached[w] = true;
                    left -= 1;
                }
                if seen.insert((w, next)) {
                    if target.is_some() {
                        parent.insert((w, next), (u, mask));
                    }
                    if target == Some(w) {
                        found = Some((w, next));
                    }
                    stack.push((w, next));
                }
            });
            if let Some(mut state) = found {
                let mut walk = vec![state.0];
                while let Some(&prev) = parent.get(&state) {
                    walk.push(prev.0);
                    state = prev;
                }
                walk.reverse();
                return (reached, Some(walk));
            }
            if target.is_none() && left == 0 {
                break;
            }
        }
        (reached, None)
    }
}

fn edge_step(g: &Graph, colours: &[u32]) -> Result<Box<Step<'static>>> {
    if colours.len() != g.m() {
        return Err(Error::InvalidParameter(format!(
            "{} edge colours for {} edges",
            colours.len(),
            g.m()
        )));
    }
    let (ids, k) = dense_ids(colours);
    guard(g.n(), k)?;
    let mut adj = vec![Vec::new(); g.n()];
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        adj[u].push((v, ids[e]));
        adj[v].push((u, ids[e]));
    }
    Ok(Box::new(
        move |_s: Vertex, u: Vertex, mask: u128, emit: &mut dyn FnMut(Vertex, u128)| {
            for &(w, c) in &adj[u] {
                let bit = 1u128 << c;
                if mask & bit == 0 {
                    emit(w, mask | bit);
                }
            }
        },
    ))
}

fn vertex_step<'a>(g: &'a Graph, colours: &[u32]) -> Result<Box<Step<'a>>> {
    if colours.len() != g.n() {
        return Err(Error::InvalidParameter(format!(
            "{} vertex colours for {} vertices",
            colours.len(),
            g.n()
        )));
    }
    let (ids, k) = dense_ids(colours);
    guard(g.n(), k)?;
    Ok(Box::new(
        move |s: Vertex, u: Vertex, mask: u128, emit: &mut dyn FnMut(Vertex, u128)| {
            // leaving u makes it internal, unless it is the start
            let next = if u == s {
                mask
            } else {
                let bit = 1u128 << ids[u];
                if mask & bit != 0 {
                    return;
                }
                mask | bit
            };
            for &w in g.neighbours(u) {
                emit(w, next);
            }
        },
    ))
}

fn all_pairs(g: &Graph, step: &Step) -> Result<VerifyReport> {
    if !is_connected(g) {
        return Err(Error::Disconnected);
    }
    let search = Search { step, n: g.n() };
    let mut checked = 0;
    for s in 0..g.n() {
        let (reached, _) = search.run(s, None);
        for t in s + 1..g.n() {
            checked += 1;
            if !reached[t] {
                return Ok(VerifyReport::fail(
                    Method::Exact,
                    checked,
                    Witness {
                        pair: (s, t),
                        explanation: format!("no rainbow path between {s} and {t}"),
                        path: None,
                    },
                ));
            }
        }
    }
    Ok(VerifyReport::pass(Method::Exact, checked))
}

pub fn is_rainbow_edge_connected_exact(g: &Graph, col: &EdgeColouring) -> Result<VerifyReport> {
    let step = edge_step(g, &col.colours)?;
    all_pairs(g, &step)
}

/// Paths of one edge have no internal vertex and always count as rainbow.
pub fn is_rainbow_vertex_connected_exact(g: &Graph, col: &VertexColouring) -> Result<VerifyReport> {
    let step = vertex_step(g, &col.colours)?;
    all_pairs(g, &step)
}

/// A path from `s` to `t` whose edges have distinct colours, if one exists.
pub fn rainbow_edge_path(
    g: &Graph,
    colours: &[u32],
    s: Vertex,
    t: Vertex,
) -> Result<Option<Vec<Vertex>>> {
    let step = edge_step(g, colours)?;
    Ok(path_between(g, &step, s, t))
}

/// A path from `s` to `t` whose internal vertices have distinct colours.
pub fn rainbow_vertex_path(
    g: &Graph,
    colours: &[u32],
    s: Vertex,
    t: Vertex,
) -> Result<Option<Vec<Vertex>>> {
    let step = vertex_step(g, colours)?;
    Ok(path_between(g, &step, s, t))
}

fn path_between(g: &Graph, step: &Step, s: Vertex, t: Vertex) -> Option<Vec<Vertex>> {
    if s == t {
        return Some(vec![s]);
    }
    let search = Search { step, n: g.n() };
    search.run(s, Some(t)).1.map(|walk| super::shortcut(&walk))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn edge_colours(g: &Graph, around: &[(Vertex, Vertex, u32)]) -> EdgeColouring {
        let mut c = vec![0; g.m()];
        for &(u, v, col) in around {
            c[g.edge_index(u, v).unwrap()] = col;
        }
        EdgeColouring::plain(c)
    }

    #[test]
    fn k3_monochromatic_is_rainbow() {
        let g = Graph::complete(3);
        let r = is_rainbow_edge_connected_exact(&g, &EdgeColouring::plain(vec![0; 3])).unwrap();
        assert!(r.verdict);
        assert_eq!(r.pairs_checked, 3);
    }

    #[test]
    fn p3_monochromatic_fails_on_endpoints() {
        let g = Graph::path(3);
        let r = is_rainbow_edge_connected_exact(&g, &EdgeColouring::plain(vec![0; 2])).unwrap();
        assert!(!r.verdict);
        assert_eq!(r.witness.unwrap().pair, (0, 2));
    }

    #[test]
    fn c4_alternating() {
        let g = Graph::cycle(4);
        let col = edge_colours(&g, &[(0, 1, 1), (1, 2, 2), (2, 3, 1), (3, 0, 2)]);
        assert!(is_rainbow_edge_connected_exact(&g, &col).unwrap().verdict);
        let path = rainbow_edge_path(&g, &col.colours, 0, 2).unwrap().unwrap();
        assert_eq!(path.len(), 3);
    }

    #[test]
    fn vertex_examples() {
        let k2 = Graph::complete(2);
        assert!(
            is_rainbow_vertex_connected_exact(&k2, &VertexColouring::plain(vec![0, 0]))
                .unwrap()
                .verdict
        );
        let p4 = Graph::path(4);
        let r = is_rainbow_vertex_connected_exact(&p4, &VertexColouring::plain(vec![0, 1, 1, 0]))
            .unwrap();
        assert!(!r.verdict);
        assert_eq!(r.witness.unwrap().pair, (0, 3));
        let c5 = Graph::cycle(5);
        assert!(
            is_rainbow_vertex_connected_exact(&c5, &VertexColouring::plain(vec![0, 1, 2, 3, 4]))
                .unwrap()
                .verdict
        );
    }

    #[test]
    fn vertex_path_avoids_repeated_internal_colour() {
        // two routes 0 -> 5: the short one through 1, 2 (same colour) and a
        // long one through 3, 4
        let g = Graph::new(6, &[(0, 1), (1, 2), (2, 5), (0, 3), (3, 4), (4, 5)]).unwrap();
        let colours = vec![9, 7, 7, 1, 2, 9];
        let path = rainbow_vertex_path(&g, &colours, 0, 5).unwrap().unwrap();
        assert_eq!(path, vec![0, 3, 4, 5]);
    }

    #[test]
    fn guard_applies() {
        let g = Graph::path(30);
        let col = EdgeColouring::plain((0..29).collect());
        assert!(matches!(
            is_rainbow_edge_connected_exact(&g, &col),
            Err(Error::GuardExceeded(_))
        ));
        let few = EdgeColouring::plain((0..29).map(|i| i % 3).collect());
        assert!(!is_rainbow_edge_connected_exact(&g, &few).unwrap().verdict);
    }

    #[test]
    fn length_mismatch() {
        assert!(
            is_rainbow_edge_connected_exact(&Graph::cycle(4), &EdgeColouring::plain(vec![0]))
                .is_err()
        );
    }
}
