use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::{component_labels, is_connected, Graph, Vertex};

/// Vertices `W` outside `U` such that `g[U ∪ W]` is connected.
///
/// Grows one component of `g[U ∪ W]` at a time: a multi-source BFS from the
/// current component stops at the nearest vertex of another component, and
/// the interior of that shortest path joins `W`. Each round removes one
/// component, so `W` is sorted by the round it was added in, not by id.
pub fn stitch_components(g: &Graph, u: &[bool]) -> Result<Vec<Vertex>> {
    let n = g.n();
    if u.len() != n {
        return Err(Error::MalformedSubset(format!(
            "mask has {} entries for {n} vertices",
            u.len()
        )));
    }
    if !is_connected(g) {
        return Err(Error::Disconnected);
    }
    let Some(start) = (0..n).find(|&v| u[v]) else {
        return Ok(Vec::new());
    };
    let (induced, original) = g.induced_subgraph(u);
    let (labels, count) = component_labels(&induced);
    let mut members = vec![Vec::new(); count];
    for (local, &v) in original.iter().enumerate() {
        members[labels[local]].push(v);
    }
    let mut label = vec![usize::MAX; n];
    for (local, &v) in original.iter().enumerate() {
        label[v] = labels[local];
    }

    let mut in_set = u.to_vec();
    let mut grown = vec![false; n];
    for &v in &members[label[start]] {
        grown[v] = true;
    }
    let mut remaining = count - 1;
    let mut w = Vec::new();
    let mut parent = vec![usize::MAX; n];
    let mut queue = VecDeque::new();
    while remaining > 0 {
        parent.fill(usize::MAX);
        queue.clear();
        for v in 0..n {
            if grown[v] {
                parent[v] = v;
                queue.push_back(v);
            }
        }
        let mut hit = None;
        'bfs: while let Some(x) = queue.pop_front() {
            for &y in g.neighbours(x) {
                if parent[y] != usize::MAX {
                    continue;
                }
                parent[y] = x;
                if in_set[y] {
                    hit = Some(y);
                    break 'bfs;
                }
                queue.push_back(y);
            }
        }
        let target = hit.expect("connected graph reaches every component");
        let mut x = parent[target];
        while !grown[x] {
            in_set[x] = true;
            grown[x] = true;
            w.push(x);
            x = parent[x];
        }
        // the reached vertex is in U, possibly joined to further components
        // only through W, which the next round's BFS picks up at distance 1
        for &v in &members[label[target]] {
            grown[v] = true;
        }
        remaining -= 1;
    }
    Ok(w)
}
