use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::random::Seed;

/// Largest vertex count for which every subset is enumerated.
pub const EXHAUSTIVE_DENSITY_N: usize = 22;
const DEFAULT_SAMPLES: usize = 2_000;

/// The subset `S` (`1 <= |S| <= max_size`) maximizing `e(S) - d|S|/2`, and
/// whether every inspected subset spans fewer than `d|S|/2` edges.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DensityAudit {
    pub d: f64,
    pub max_size: usize,
    pub worst_set: Vec<Vertex>,
    pub worst_edges: usize,
    pub excess: f64,
    pub verdict: bool,
    pub exhaustive: bool,
    pub sets_checked: u64,
}

struct Best {
    d: f64,
    excess: f64,
    set: Vec<Vertex>,
    edges: usize,
    checked: u64,
}

impl Best {
    fn new(d: f64) -> Self {
        Best {
            d,
            excess: f64::NEG_INFINITY,
            set: Vec::new(),
            edges: 0,
            checked: 0,
        }
    }

    fn offer(&mut self, edges: usize, size: usize, set: impl FnOnce() -> Vec<Vertex>) {
        self.checked += 1;
        let excess = edges as f64 - self.d * size as f64 / 2.0;
        if excess > self.excess {
            self.excess = excess;
            self.edges = edges;
            self.set = set();
        }
    }

    fn finish(self, max_size: usize, exhaustive: bool) -> DensityAudit {
        DensityAudit {
            d: self.d,
            max_size,
            verdict: self.excess < 0.0,
            worst_set: self.set,
            worst_edges: self.edges,
            excess: self.excess,
            exhaustive,
            sets_checked: self.checked,
        }
    }
}

/// Exhaustive when `n <= EXHAUSTIVE_DENSITY_N`, greedy sampling otherwise.
pub fn density_audit(g: &Graph, d: f64, max_size: usize) -> Result<DensityAudit> {
    if g.n() <= EXHAUSTIVE_DENSITY_N {
        density_audit_exhaustive(g, d, max_size)
    } else {
        density_audit_sampled(g, d, max_size, DEFAULT_SAMPLES, Seed(0))
    }
}

/// Every subset in Gray-code order, with the spanned edge count updated by
/// one vertex per step.
pub fn density_audit_exhaustive(g: &Graph, d: f64, max_size: usize) -> Result<DensityAudit> {
    let n = g.n();
    if n > EXHAUSTIVE_DENSITY_N {
        return Err(Error::EnumerationCap {
            n,
            cap: EXHAUSTIVE_DENSITY_N,
        });
    }
    let adj: Vec<u32> = (0..n)
        .map(|v| g.neighbours(v).iter().fold(0u32, |m, &w| m | 1 << w))
        .collect();
    let mut best = Best::new(d);
    let (mut mask, mut edges, mut size) = (0u32, 0usize, 0usize);
    for i in 1u64..(1u64 << n) {
        let v = i.trailing_zeros() as usize;
        let bit = 1u32 << v;
        if mask & bit == 0 {
            edges += (adj[v] & mask).count_ones() as usize;
            mask |= bit;
            size += 1;
        } else {
            mask &= !bit;
            edges -= (adj[v] & mask).count_ones() as usize;
            size -= 1;
        }
        if size <= max_size {
            best.offer(edges, size, || {
                (0..n).filter(|&u| mask >> u & 1 == 1).collect()
            });
        }
    }
    Ok(best.finish(max_size.min(n), true))
}

/// Greedy densest-set search: from a random start, repeatedly add the
/// outside vertex with the most neighbours inside (random tie-break) and
/// score every prefix. A lower bound on the true worst excess.
pub fn density_audit_sampled(
    g: &Graph,
    d: f64,
    max_size: usize,
    samples: usize,
    seed: Seed,
) -> Result<DensityAudit> {
    let n = g.n();
    if n == 0 || max_size == 0 {
        return Err(Error::InvalidParameter("nothing to sample".into()));
    }
    let limit = max_size.min(n);
    let mut best = Best::new(d);
    for sample in 0..samples {
        let mut rng = seed.derive(sample as u64).rng();
        let start = rng.gen_range(0..n);
        let mut inside = vec![false; n];
        let mut set = vec![start];
        inside[start] = true;
        let mut links: HashMap<Vertex, usize> = HashMap::new();
        let mut edges = 0;
        let mut ties = Vec::new();
        loop {
            best.offer(edges, set.len(), || {
                let mut s = set.clone();
                s.sort_unstable();
                s
            });
            if set.len() == limit {
                break;
            }
            let last = *set.last().expect("non-empty");
            for &w in g.neighbours(last) {
                if !inside[w] {
                    *links.entry(w).or_insert(0) += 1;
                }
            }
            let Some(&top) = links.values().max() else {
                break;
            };
            ties.clear();
            ties.extend(links.iter().filter(|&(_, &c)| c == top).map(|(&v, _)| v));
            ties.sort_unstable();
            let &next = ties.choose(&mut rng).expect("non-empty");
            links.remove(&next);
            inside[next] = true;
            set.push(next);
            edges += top;
        }
    }
    Ok(best.finish(limit, false))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Second enumerator: recursion over combinations with direct counting.
    fn oracle_max_excess(g: &Graph, d: f64, max_size: usize) -> f64 {
        fn rec(g: &Graph, d: f64, max: usize, from: usize, set: &mut Vec<usize>, best: &mut f64) {
            if !set.is_empty() {
                let e = g
                    .edges()
                    .iter()
                    .filter(|(u, v)| set.contains(u) && set.contains(v))
                    .count();
                *best = best.max(e as f64 - d * set.len() as f64 / 2.0);
            }
            if set.len() == max {
                return;
            }
            for v in from..g.n() {
                set.push(v);
                rec(g, d, max, v + 1, set, best);
                set.pop();
            }
        }
        let mut best = f64::NEG_INFINITY;
        rec(g, d, max_size, 0, &mut Vec::new(), &mut best);
        best
    }

    #[test]
    fn k4_examples() {
        let g = Graph::complete(4);
        let pass = density_audit(&g, 6.0, 4).unwrap();
        assert!(pass.verdict && pass.exhaustive);
        let fail = density_audit(&g, 3.0, 4).unwrap();
        assert!(!fail.verdict);
        assert_eq!(fail.worst_set, vec![0, 1, 2, 3]);
        assert_eq!(fail.worst_edges, 6);
        assert_eq!(fail.excess, 0.0);
    }

    #[test]
    fn triangle_free_small_sets() {
        let a = density_audit(&Graph::cycle(8), 2.0, 3).unwrap();
        assert!(a.verdict);
        assert_eq!(a.sets_checked, 8 + 28 + 56);
    }

    #[test]
    fn agrees_with_second_enumerator() {
        let graphs = [
            Graph::petersen(),
            Graph::complete(6),
            Graph::circulant(9, &[1, 3]).unwrap(),
            Graph::star(7),
            Graph::path(10),
        ];
        for g in &graphs {
            for (d, k) in [(2.0, 3), (3.0, 5), (1.5, 10), (4.0, 2)] {
                let a = density_audit_exhaustive(g, d, k).unwrap();
                assert_eq!(a.excess, oracle_max_excess(g, d, k));
                let s = &a.worst_set;
                let e = g
                    .edges()
                    .iter()
                    .filter(|(u, v)| s.contains(u) && s.contains(v))
                    .count();
                assert_eq!(e, a.worst_edges);
            }
        }
    }

    #[test]
    fn sampling_finds_a_dense_spot() {
        // K5 planted in a long cycle
        let mut edges: Vec<_> = (0..40).map(|i| (i, (i + 1) % 40)).collect();
        for u in 10..15 {
            for v in u + 1..15 {
                edges.push((u, v));
            }
        }
        let g = Graph::new(40, &edges).unwrap();
        let a = density_audit(&g, 3.0, 6).unwrap();
        assert!(!a.exhaustive);
        assert!(!a.verdict);
        assert!(a.worst_edges >= 10);
    }

    #[test]
    fn cap() {
        assert!(density_audit_exhaustive(&Graph::cycle(23), 2.0, 3).is_err());
    }
}
