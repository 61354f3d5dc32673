use rand::seq::index;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{ordered, Vertex};
use crate::random::{sample_pairing, Seed};

/// Fewest trials accepted by the estimators.
pub const MIN_TRIALS: usize = 10_000;
/// Largest point count `n·r` for exact pairing enumeration.
const EXACT_PAIRING_POINTS: usize = 16;
/// Largest number of subsets for exact gap enumeration.
const EXACT_GAP_SUBSETS: u128 = 20_000_000;

/// Empirical frequency with a 3σ binomial interval, next to the analytic
/// upper bound it is meant to respect. Inconsistent only when even the low
/// end of the interval exceeds the bound.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct McEstimate {
    pub trials: usize,
    pub hits: usize,
    pub estimate: f64,
    pub sigma: f64,
    pub bound: f64,
    pub lower: f64,
    pub upper: f64,
    pub consistent: bool,
}

impl McEstimate {
    pub fn new(hits: usize, trials: usize, bound: f64) -> Self {
        let p = hits as f64 / trials as f64;
        let sigma = (p * (1.0 - p) / trials as f64).sqrt();
        McEstimate {
            trials,
            hits,
            estimate: p,
            sigma,
            bound,
            lower: p - 3.0 * sigma,
            upper: p + 3.0 * sigma,
            consistent: p - 3.0 * sigma <= bound,
        }
    }

    /// Whether `value` lies within `estimate ± 3σ`. With no hits or no
    /// misses σ is 0, so a one-trial-resolution slack is allowed.
    pub fn covers(&self, value: f64) -> bool {
        let slack = (3.0 * self.sigma).max(1.0 / self.trials as f64);
        (value - self.estimate).abs() <= slack
    }
}

fn check_trials(trials: usize) -> Result<()> {
    if trials < MIN_TRIALS {
        return Err(Error::InvalidParameter(format!(
            "need at least {MIN_TRIALS} trials, got {trials}"
        )));
    }
    Ok(())
}

fn check_edge_set(n: usize, r: usize, e0: &[(Vertex, Vertex)]) -> Result<Vec<(Vertex, Vertex)>> {
    if (n * r) % 2 == 1 {
        return Err(Error::OddPointCount { n, r });
    }
    if 4 * e0.len() > n * r {
        return Err(Error::InvalidParameter(format!(
            "|E0| = {} exceeds nr/4 = {}",
            e0.len(),
            n * r / 4
        )));
    }
    let mut set = Vec::with_capacity(e0.len());
    for &(u, v) in e0 {
        if u >= n || v >= n {
            return Err(Error::VertexOutOfRange {
                vertex: u.max(v),
                n,
            });
        }
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        set.push(ordered(u, v));
    }
    set.sort_unstable();
    if set.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::InvalidParameter("E0 lists a pair twice".into()));
    }
    Ok(set)
}

/// Whether every pair of `e0` joins the two cells of some pair of points.
fn covers_all(partner: &[usize], r: usize, e0: &[(Vertex, Vertex)]) -> bool {
    e0.iter()
        .all(|&(u, v)| (u * r..(u + 1) * r).any(|p| partner[p] / r == v))
}

/// `2(2r/n)^m`.
pub fn pairing_bound(n: usize, r: usize, m: usize) -> f64 {
    2.0 * (2.0 * r as f64 / n as f64).powi(m as i32)
}

/// Frequency of `E0 ⊆ E(G(P))` over uniform pairings `P`.
pub fn mc_pairing_edge_probability(
    n: usize,
    r: usize,
    e0: &[(Vertex, Vertex)],
    trials: usize,
    seed: Seed,
) -> Result<McEstimate> {
    let set = check_edge_set(n, r, e0)?;
    check_trials(trials)?;
    let hits = (0..trials as u64)
        .into_par_iter()
        .map(|t| {
            let p = sample_pairing(n, r, seed.derive(t)).expect("validated");
            usize::from(covers_all(&p.partner, r, &set))
        })
        .sum();
    Ok(McEstimate::new(
        hits,
        trials,
        pairing_bound(n, r, set.len()),
    ))
}

/// `(pairings containing E0, all pairings)`, by enumeration.
pub fn exact_pairing_edge_probability(
    n: usize,
    r: usize,
    e0: &[(Vertex, Vertex)],
) -> Result<(u64, u64)> {
    let set = check_edge_set(n, r, e0)?;
    let points = n * r;
    if points > EXACT_PAIRING_POINTS {
        return Err(Error::EnumerationCap {
            n: points,
            cap: EXACT_PAIRING_POINTS,
        });
    }
    fn rec(partner: &mut [usize], r: usize, set: &[(Vertex, Vertex)], tally: &mut (u64, u64)) {
        let Some(p) = partner.iter().position(|&q| q == usize::MAX) else {
            tally.1 += 1;
            tally.0 += u64::from(covers_all(partner, r, set));
            return;
        };
        for q in p + 1..partner.len() {
            if partner[q] == usize::MAX {
                partner[p] = q;
                partner[q] = p;
                rec(partner, r, set, tally);
                partner[p] = usize::MAX;
                partner[q] = usize::MAX;
            }
        }
    }
    let mut tally = (0, 0);
    rec(&mut vec![usize::MAX; points], r, &set, &mut tally);
    Ok(tally)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GapTailEstimate {
    /// `Pr[Σ_{i ∈ I} Y_i > 10s]` against `e^{-2s}`.
    pub tail: McEstimate,
    /// Frequency of `Y_2m > ln n`.
    pub last_gap_over_ln: f64,
    /// Frequency of `Y_2m > log2 n`.
    pub last_gap_over_log2: f64,
}

fn check_gap_indices(n: usize, m: usize, indices: &[usize]) -> Result<()> {
    if m == 0 || 2 * m > n {
        return Err(Error::InvalidParameter(format!(
            "need 1 <= 2m <= n, got n = {n}, m = {m}"
        )));
    }
    let mut sorted = indices.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::MalformedSubset("indices repeat".into()));
    }
    if let Some(&i) = sorted.iter().find(|&&i| i >= 2 * m) {
        return Err(Error::MalformedSubset(format!(
            "index {i} outside 0..{}",
            2 * m
        )));
    }
    Ok(())
}

/// The three events for one 1-based sorted subset `b` of `[n]`:
/// (tail, `Y_2m > ln n`, `Y_2m > log2 n`).
fn gap_events(n: usize, b: &[usize], indices: &[usize]) -> (bool, bool, bool) {
    let y = |i: usize| if i == 0 { b[0] } else { b[i] - b[i - 1] };
    let sum: usize = indices.iter().map(|&i| y(i)).sum();
    let last = (n - b[b.len() - 1]) as f64;
    (
        sum > 10 * indices.len(),
        last > (n as f64).ln(),
        last > (n as f64).log2(),
    )
}

/// Gap sequences of uniform `2m`-subsets of `[n]`.
pub fn mc_gap_tail(
    n: usize,
    m: usize,
    indices: &[usize],
    trials: usize,
    seed: Seed,
) -> Result<GapTailEstimate> {
    check_gap_indices(n, m, indices)?;
    check_trials(trials)?;
    let (tail, ln, log2) = (0..trials as u64)
        .into_par_iter()
        .map(|t| {
            let mut rng = seed.derive(t).rng();
            let mut b: Vec<usize> = index::sample(&mut rng, n, 2 * m)
                .into_iter()
                .map(|x| x + 1)
                .collect();
            b.sort_unstable();
            let (a, c, d) = gap_events(n, &b, indices);
            (usize::from(a), usize::from(c), usize::from(d))
        })
        .reduce(|| (0, 0, 0), |x, y| (x.0 + y.0, x.1 + y.1, x.2 + y.2));
    let s = indices.len() as f64;
    Ok(GapTailEstimate {
        tail: McEstimate::new(tail, trials, (-2.0 * s).exp()),
        last_gap_over_ln: ln as f64 / trials as f64,
        last_gap_over_log2: log2 as f64 / trials as f64,
    })
}

/// Exact probabilities of the three events by enumerating every
/// `2m`-subset: `(tail, Y_2m > ln n, Y_2m > log2 n)`.
pub fn exact_gap_tail(n: usize, m: usize, indices: &[usize]) -> Result<(f64, f64, f64)> {
    check_gap_indices(n, m, indices)?;
    let k = 2 * m;
    let total: u128 = (0..k as u128).fold(1, |acc, i| acc * (n as u128 - i) / (i + 1));
    if total > EXACT_GAP_SUBSETS {
        return Err(Error::EnumerationCap { n, cap: k });
    }
    let mut b: Vec<usize> = (1..=k).collect();
    let mut counts = [0u64; 3];
    loop {
        let (a, c, d) = gap_events(n, &b, indices);
        counts[0] += u64::from(a);
        counts[1] += u64::from(c);
        counts[2] += u64::from(d);
        // next combination in lexicographic order
        let Some(i) = (0..k).rev().find(|&i| b[i] < n - (k - 1 - i)) else {
            break;
        };
        b[i] += 1;
        for j in i + 1..k {
            b[j] = b[j - 1] + 1;
        }
    }
    let t = total as f64;
    Ok((
        counts[0] as f64 / t,
        counts[1] as f64 / t,
        counts[2] as f64 / t,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_cells_of_degree_two() {
        // points 0,1 | 2,3: pairings {01,23}, {02,13}, {03,12}; two join the cells
        assert_eq!(
            exact_pairing_edge_probability(2, 2, &[(0, 1)]).unwrap(),
            (2, 3)
        );
        assert!(pairing_bound(2, 2, 1) == 4.0);
        let mc = mc_pairing_edge_probability(2, 2, &[(0, 1)], MIN_TRIALS, Seed(4)).unwrap();
        assert!(mc.covers(2.0 / 3.0), "{mc:?}");
    }

    #[test]
    fn empty_edge_set() {
        let mc = mc_pairing_edge_probability(10, 3, &[], MIN_TRIALS, Seed(0)).unwrap();
        assert_eq!(mc.estimate, 1.0);
        assert_eq!(mc.bound, 2.0);
        assert!(mc.consistent);
    }

    #[test]
    fn mc_matches_enumeration_small() {
        for (n, r, e0) in [
            (4, 2, vec![(0, 1)]),
            (4, 3, vec![(0, 1), (2, 3)]),
            (6, 2, vec![(0, 5)]),
        ] {
            let (hits, total) = exact_pairing_edge_probability(n, r, &e0).unwrap();
            let mc = mc_pairing_edge_probability(n, r, &e0, 20_000, Seed(9)).unwrap();
            assert!(
                mc.covers(hits as f64 / total as f64),
                "{n} {r}: {mc:?} vs {hits}/{total}"
            );
        }
    }

    #[test]
    fn pairing_preconditions() {
        assert!(mc_pairing_edge_probability(2, 2, &[(0, 1), (0, 1)], MIN_TRIALS, Seed(0)).is_err());
        assert!(mc_pairing_edge_probability(40, 4, &[(0, 1)], 100, Seed(0)).is_err());
        assert!(mc_pairing_edge_probability(3, 3, &[], MIN_TRIALS, Seed(0)).is_err());
        assert!(exact_pairing_edge_probability(6, 3, &[]).is_err());
    }

    #[test]
    fn n40_r4_three_edges() {
        let mc = mc_pairing_edge_probability(40, 4, &[(0, 1), (2, 3), (4, 5)], MIN_TRIALS, Seed(1))
            .unwrap();
        assert!(mc.consistent);
        assert!((mc.bound - 2.0 * 0.2f64.powi(3)).abs() < 1e-12);
    }

    #[test]
    fn gap_tail_enumeration_small() {
        // n = 12: no two gaps can exceed 20, but Y_6 > ln 12 happens
        let (tail, ln, log2) = exact_gap_tail(12, 3, &[0, 3]).unwrap();
        assert_eq!(tail, 0.0);
        // Y_6 >= 3 iff b_6 <= 9: C(9,6)/C(12,6)
        assert!((ln - 84.0 / 924.0).abs() < 1e-12);
        // Y_6 > 3.585 iff b_6 <= 8: C(8,6)/C(12,6)
        assert!((log2 - 28.0 / 924.0).abs() < 1e-12);
        let mc = mc_gap_tail(12, 3, &[0, 3], 20_000, Seed(2)).unwrap();
        let as_estimate = |p: f64| McEstimate::new((p * 20_000.0).round() as usize, 20_000, 1.0);
        assert!(as_estimate(mc.last_gap_over_ln).covers(ln));
        assert!(as_estimate(mc.last_gap_over_log2).covers(log2));
    }

    #[test]
    fn gap_single_index_against_enumeration() {
        // Y_0 > 10 at n = 16, m = 2: b_1 >= 11, so C(6,4)/C(16,4)
        let (tail, _, _) = exact_gap_tail(16, 2, &[0]).unwrap();
        assert!((tail - 15.0 / 1820.0).abs() < 1e-12);
        let mc = mc_gap_tail(16, 2, &[0], 40_000, Seed(3)).unwrap();
        assert!(mc.tail.covers(tail), "{mc:?}");
    }

    #[test]
    fn gap_empty_indices_and_errors() {
        let mc = mc_gap_tail(40, 10, &[], MIN_TRIALS, Seed(0)).unwrap();
        assert_eq!(mc.tail.estimate, 0.0);
        assert_eq!(mc.tail.bound, 1.0);
        assert!(mc_gap_tail(40, 10, &[20], MIN_TRIALS, Seed(0)).is_err());
        assert!(mc_gap_tail(40, 10, &[3, 3], MIN_TRIALS, Seed(0)).is_err());
        assert!(mc_gap_tail(10, 6, &[0], MIN_TRIALS, Seed(0)).is_err());
    }

    #[test]
    fn estimates_are_deterministic() {
        let a = mc_gap_tail(40, 10, &[1], MIN_TRIALS, Seed(7)).unwrap();
        let b = mc_gap_tail(40, 10, &[1], MIN_TRIALS, Seed(7)).unwrap();
        assert_eq!(a, b);
    }
}
