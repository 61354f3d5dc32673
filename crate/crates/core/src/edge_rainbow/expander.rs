use rand::Rng;

use super::EdgeSplit;
use crate::error::{Error, Result};
use crate::graph::{edge_expansion_exact, is_connected, Expansion, Graph};
use crate::random::Seed;

/// A validated split whose halves both expand by at least
/// `(1 - λ)·Φ(g)/2`.
#[derive(Debug, Clone)]
pub struct ExpanderSplit {
    pub split: EdgeSplit,
    pub phi: Expansion,
    pub expansion1: Expansion,
    pub expansion2: Expansion,
    pub target: f64,
    pub attempts: usize,
}

/// Las Vegas edge 2-colouring: each edge joins `E1` or `E2` by a fair coin,
/// and the attempt is kept only if the exact edge expansion of both
/// `(V, E1)` and `(V, E2)` reaches the target. Exact expansion needs
/// `n <= cap`.
pub fn expander_split(
    g: &Graph,
    lambda: f64,
    seed: Seed,
    max_retries: usize,
    cap: usize,
) -> Result<ExpanderSplit> {
    if !(lambda > 0.0 && lambda < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "lambda must lie in (0, 1), got {lambda}"
        )));
    }
    if !is_connected(g) {
        return Err(Error::Disconnected);
    }
    let phi = edge_expansion_exact(g, cap)?;
    let (phi_out, phi_size) = (phi.out as f64, phi.size as f64);
    // out/size >= (1-λ)·phi_out/(2·phi_size), cross-multiplied
    let meets = |e: &Expansion| {
        2.0 * e.out as f64 * phi_size >= (1.0 - lambda) * phi_out * e.size as f64 - 1e-9
    };
    let target = (1.0 - lambda) * phi.as_f64() / 2.0;

    let mut best = (f64::NEG_INFINITY, 0.0, 0.0);
    for attempt in 0..max_retries {
        let mut rng = seed.derive(attempt as u64).rng();
        let (mut e1, mut e2) = (Vec::new(), Vec::new());
        for e in 0..g.m() {
            if rng.gen::<bool>() {
                e1.push(e);
            } else {
                e2.push(e);
            }
        }
        let x1 = edge_expansion_exact(&g.spanning_subgraph(&e1), cap)?;
        let x2 = edge_expansion_exact(&g.spanning_subgraph(&e2), cap)?;
        let worst = x1.as_f64().min(x2.as_f64());
        if worst > best.0 {
            best = (worst, x1.as_f64(), x2.as_f64());
        }
        if meets(&x1) && meets(&x2) {
            let split = EdgeSplit::new(g.clone(), e1, e2)?;
            return Ok(ExpanderSplit {
                split,
                phi,
                expansion1: x1,
                expansion2: x2,
                target,
                attempts: attempt + 1,
            });
        }
    }
    Err(Error::AttemptsExhausted {
        what: format!(
            "expander split to expansion {target:.4} (best attempt reached {:.4} and {:.4})",
            best.1, best.2
        ),
        attempts: max_retries,
    })
}
