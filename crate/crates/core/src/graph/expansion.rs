use num_rational::Ratio;
use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use super::{Graph, Vertex};
use crate::error::{Error, Result};
use crate::random::Seed;

/// Largest `n` for which [`edge_expansion_exact`] enumerates subsets by default.
pub const DEFAULT_EXPANSION_CAP: usize = 24;

/// Result of an expansion computation: `value = out / size` attained by
/// `witness`. When `exact` is false the value only bounds Φ from above.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Expansion {
    #[serde(serialize_with = "ratio_as_f64")]
    pub value: Ratio<u64>,
    pub out: usize,
    pub size: usize,
    pub witness: Vec<Vertex>,
    pub exact: bool,
}

fn ratio_as_f64<S: serde::Serializer>(r: &Ratio<u64>, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_f64(*r.numer() as f64 / *r.denom() as f64)
}

impl Expansion {
    pub fn as_f64(&self) -> f64 {
        *self.value.numer() as f64 / *self.value.denom() as f64
    }
}

/// Number of edges with exactly one endpoint in `set`.
pub fn out_degree_count(g: &Graph, set: &[bool]) -> usize {
    g.edges().iter().filter(|&&(u, v)| set[u] != set[v]).count()
}

/// Φ(g) = min |out(S)| / |S| over non-empty `S` with `|S| <= n/2`, by visiting
/// every subset in Gray-code order and updating the cut size incrementally.
pub fn edge_expansion_exact(g: &Graph, cap: usize) -> Result<Expansion> {
    let n = g.n();
    if n > cap || n > 40 {
        return Err(Error::EnumerationCap { n, cap });
    }
    if n < 2 {
        return Err(Error::InvalidParameter(
            "edge expansion needs at least 2 vertices".into(),
        ));
    }
    let adj: Vec<u64> = (0..n)
        .map(|v| g.neighbours(v).iter().fold(0u64, |m, &w| m | (1 << w)))
        .collect();
    let half = n / 2;

    let mut set = 0u64;
    let mut size = 0usize;
    let mut cut = 0usize;
    let mut best: Option<(usize, usize, u64)> = None;
    for step in 1u64..(1u64 << n) {
        let v = step.trailing_zeros() as usize;
        let bit = 1u64 << v;
        let inside = (adj[v] & set & !bit).count_ones() as usize;
        let deg = g.degree(v);
        if set & bit == 0 {
            cut = cut + deg - 2 * inside;
            set |= bit;
            size += 1;
        } else {
            cut = cut + 2 * inside - deg;
            set &= !bit;
            size -= 1;
        }
        if size == 0 || size > half {
            continue;
        }
        let better = match best {
            None => true,
            Some((b_out, b_size, _)) => cut * b_size < b_out * size,
        };
        if better {
            best = Some((cut, size, set));
        }
    }
    let (out, size, mask) = best.expect("n >= 2 has a set of size 1");
    Ok(Expansion {
        value: Ratio::new(out as u64, size as u64),
        out,
        size,
        witness: (0..n).filter(|&v| mask & (1 << v) != 0).collect(),
        exact: true,
    })
}

/// Upper bound on Φ(g) from sampled sets: random sets of random size and BFS
/// balls around random centres, both capped at `n/2` vertices.
pub fn edge_expansion_sampled(g: &Graph, samples: usize, seed: Seed) -> Result<Expansion> {
    let n = g.n();
    if n < 2 {
        return Err(Error::InvalidParameter(
            "edge expansion needs at least 2 vertices".into(),
        ));
    }
    let half = n / 2;
    let mut rng = seed.rng();
    let mut order: Vec<Vertex> = (0..n).collect();
    let mut best: Option<Expansion> = None;
    for sample in 0..samples.max(1) {
        let size = rng.gen_range(1..=half);
        let members: Vec<Vertex> = if sample % 2 == 0 {
            order.shuffle(&mut rng);
            order[..size].to_vec()
        } else {
            ball(g, rng.gen_range(0..n), size)
        };
        let mut set = vec![false; n];
        for &v in &members {
            set[v] = true;
        }
        let out = out_degree_count(g, &set);
        let size = members.len();
        let better = best.as_ref().is_none_or(|b| out * b.size < b.out * size);
        if better {
            let mut witness = members;
            witness.sort_unstable();
            best = Some(Expansion {
                value: Ratio::new(out as u64, size as u64),
                out,
                size,
                witness,
                exact: false,
            });
        }
    }
    Ok(best.expect("at least one sample"))
}

fn ball(g: &Graph, centre: Vertex, size: usize) -> Vec<Vertex> {
    let mut seen = vec![false; g.n()];
    let mut out = vec![centre];
    seen[centre] = true;
    let mut head = 0;
    while out.len() < size && head < out.len() {
        let u = out[head];
        head += 1;
        for &w in g.neighbours(u) {
            if out.len() == size {
                break;
            }
            if !seen[w] {
                seen[w] = true;
                out.push(w);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Direct recomputation over all bitmasks, no incremental updates.
    fn brute(g: &Graph) -> Ratio<u64> {
        let n = g.n();
        let mut best: Option<Ratio<u64>> = None;
        for mask in 1u64..(1 << n) {
            let size = mask.count_ones() as u64;
            if size as usize > n / 2 {
                continue;
            }
            let set: Vec<bool> = (0..n).map(|v| mask & (1 << v) != 0).collect();
            let r = Ratio::new(out_degree_count(g, &set) as u64, size);
            best = Some(best.map_or(r, |b| b.min(r)));
        }
        best.unwrap()
    }

    #[test]
    fn k4_expansion_is_two() {
        let e = edge_expansion_exact(&Graph::complete(4), DEFAULT_EXPANSION_CAP).unwrap();
        assert_eq!(e.value, Ratio::from_integer(2));
        assert_eq!((e.out, e.size), (4, 2));
    }

    #[test]
    fn c6_expansion_is_two_thirds() {
        let e = edge_expansion_exact(&Graph::cycle(6), DEFAULT_EXPANSION_CAP).unwrap();
        assert_eq!(e.value, Ratio::new(2, 3));
        assert_eq!(e.size, 3);
        assert_eq!(brute(&Graph::cycle(6)), Ratio::new(2, 3));
    }

    #[test]
    fn k2_expansion_is_one() {
        let e = edge_expansion_exact(&Graph::complete(2), DEFAULT_EXPANSION_CAP).unwrap();
        assert_eq!(e.value, Ratio::from_integer(1));
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(
            edge_expansion_exact(&Graph::cycle(25), DEFAULT_EXPANSION_CAP),
            Err(Error::EnumerationCap { n: 25, cap: 24 })
        ));
    }

    #[test]
    fn matches_brute_force_on_small_graphs() {
        let graphs = [
            Graph::petersen(),
            Graph::path(7),
            Graph::star(8),
            Graph::complete(9),
            Graph::circulant(10, &[1, 3]).unwrap(),
            Graph::new(5, &[(0, 1), (2, 3)]).unwrap(),
        ];
        for g in &graphs {
            let e = edge_expansion_exact(g, DEFAULT_EXPANSION_CAP).unwrap();
            assert_eq!(e.value, brute(g));
            let mut set = vec![false; g.n()];
            for &v in &e.witness {
                set[v] = true;
            }
            assert_eq!(out_degree_count(g, &set), e.out);
        }
    }

    #[test]
    fn sampled_bound_is_never_below_exact() {
        let g = Graph::petersen();
        let exact = edge_expansion_exact(&g, DEFAULT_EXPANSION_CAP).unwrap();
        let sampled = edge_expansion_sampled(&g, 200, Seed(3)).unwrap();
        assert!(!sampled.exact);
        assert!(sampled.value >= exact.value);
    }
}
