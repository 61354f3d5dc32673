use std::collections::VecDeque;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::random::Seed;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PartitionParams {
    pub gamma: f64,
    pub max_resamples: usize,
    /// Run even when the local-lemma condition fails for this `(γ, r)`.
    pub best_effort: bool,
}

impl Default for PartitionParams {
    fn default() -> Self {
        PartitionParams {
            gamma: 0.11,
            max_resamples: usize::MAX,
            best_effort: false,
        }
    }
}

impl PartitionParams {
    pub fn with_resample_budget(mut self, max_resamples: usize) -> Self {
        self.max_resamples = max_resamples;
        self
    }

    /// `⌈γr⌉`, the neighbour count required on each side.
    pub fn min_degree_required(&self, r: usize) -> usize {
        // shave rounding noise so that e.g. 0.11·100 counts as 11
        (self.gamma * r as f64 - 1e-9).ceil().max(0.0) as usize
    }

    /// `(r² + 1)·2·e^{1 - 2(1/2 - γ)² r}`; the local lemma applies when < 1.
    pub fn lll_quantity(&self, r: usize) -> f64 {
        let r = r as f64;
        let slack = 0.5 - self.gamma;
        (r * r + 1.0) * 2.0 * (1.0 - 2.0 * slack * slack * r).exp()
    }

    pub fn lll_feasible(&self, r: usize) -> bool {
        self.lll_quantity(r) < 1.0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Partition {
    /// `true` for `U1`, `false` for `U2`.
    pub side: Vec<bool>,
    pub threshold: usize,
    pub resamples: usize,
}

impl Partition {
    pub fn part(&self, first: bool) -> Vec<Vertex> {
        (0..self.side.len())
            .filter(|&v| self.side[v] == first)
            .collect()
    }

    pub fn mask(&self, first: bool) -> Vec<bool> {
        self.side.iter().map(|&s| s == first).collect()
    }
}

/// Vertices with fewer than `threshold` neighbours on either side.
pub fn partition_violations(g: &Graph, side: &[bool], threshold: usize) -> Vec<Vertex> {
    (0..g.n())
        .filter(|&v| {
            let ones = g.neighbours(v).iter().filter(|&&w| side[w]).count();
            ones < threshold || g.degree(v) - ones < threshold
        })
        .collect()
}

/// Two-sided partition of an `r`-regular graph in which every vertex has at
/// least `⌈γr⌉` neighbours on each side, found by Moser–Tardos resampling:
/// start from fair coins, and while some vertex is short on a side, re-flip
/// the coins of its closed neighbourhood.
pub fn lll_partition(g: &Graph, params: &PartitionParams, seed: Seed) -> Result<Partition> {
    if !(params.gamma > 0.0 && params.gamma < 0.5) {
        return Err(Error::InvalidParameter(format!(
            "gamma must lie in (0, 1/2), got {}",
            params.gamma
        )));
    }
    let r = g
        .regular_degree()
        .ok_or_else(|| Error::InvalidParameter("partition requires a regular graph".into()))?;
    if !params.best_effort && !params.lll_feasible(r) {
        return Err(Error::InvalidParameter(format!(
            "local lemma condition fails for gamma = {}, r = {r}: {:.4} >= 1",
            params.gamma,
            params.lll_quantity(r)
        )));
    }
    let threshold = params.min_degree_required(r);
    let n = g.n();
    let mut rng = seed.rng();
    let mut side: Vec<bool> = (0..n).map(|_| rng.gen()).collect();
    let mut ones: Vec<usize> = (0..n)
        .map(|v| g.neighbours(v).iter().filter(|&&w| side[w]).count())
        .collect();
    let bad = |v: Vertex, ones: &[usize]| ones[v] < threshold || r - ones[v] < threshold;

    let mut queued = vec![false; n];
    let mut queue: VecDeque<Vertex> = VecDeque::new();
    for v in 0..n {
        if bad(v, &ones) {
            queued[v] = true;
            queue.push_back(v);
        }
    }
    let mut resamples = 0usize;
    while let Some(v) = queue.pop_front() {
        queued[v] = false;
        if !bad(v, &ones) {
            continue;
        }
        if resamples == params.max_resamples {
            let mut remaining = partition_violations(g, &side, threshold);
            remaining.truncate(16);
            return Err(Error::AttemptsExhausted {
                what: format!("partition (violating vertices include {remaining:?})"),
                attempts: resamples,
            });
        }
        resamples += 1;
        let closed = std::iter::once(v).chain(g.neighbours(v).iter().copied());
        for u in closed.collect::<Vec<_>>() {
            let coin: bool = rng.gen();
            if coin == side[u] {
                continue;
            }
            side[u] = coin;
            for &w in g.neighbours(u) {
                if coin {
                    ones[w] += 1;
                } else {
                    ones[w] -= 1;
                }
                if !queued[w] && bad(w, &ones) {
                    queued[w] = true;
                    queue.push_back(w);
                }
            }
        }
        if !queued[v] && bad(v, &ones) {
            queued[v] = true;
            queue.push_back(v);
        }
    }
    debug_assert!(partition_violations(g, &side, threshold).is_empty());
    Ok(Partition {
        side,
        threshold,
        resamples,
    })
}
