//! Checks on constructed colourings and on the probabilistic lemmas behind
//! the random models.
//!
//! Exact rainbow checks search over `(vertex, used colours)` states and are
//! guarded to small instances. Certificate checks rebuild, for each vertex
//! pair, the path the layered construction promises and test its colours.
//! The Monte Carlo estimators report an estimate, the analytic bound and a
//! 3σ binomial interval rather than a bare pass/fail.

mod certificate;
mod density;
mod diameter;
mod exact;
mod montecarlo;

pub use certificate::{
    check_edge_certificate, check_vertex_certificate, edge_certificate_path,
    vertex_certificate_path, PairSelection,
};
pub use density::{
    density_audit, density_audit_exhaustive, density_audit_sampled, DensityAudit,
    EXHAUSTIVE_DENSITY_N,
};
pub use diameter::{
    cycle_matching_diameter_distribution, diameter_statistics, DiameterModel, DiameterRow,
};
pub use exact::{
    is_rainbow_edge_connected_exact, is_rainbow_vertex_connected_exact, rainbow_edge_path,
    rainbow_vertex_path, EXACT_COLOUR_GUARD, EXACT_N_GUARD,
};
pub use montecarlo::{
    exact_gap_tail, exact_pairing_edge_probability, mc_gap_tail, mc_pairing_edge_probability,
    GapTailEstimate, McEstimate, MIN_TRIALS,
};

use serde::{Deserialize, Serialize};

use crate::graph::Vertex;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Exact,
    Certificate,
    Sampled,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub pair: (Vertex, Vertex),
    pub explanation: String,
    /// The path the certificate produced for `pair`, if any.
    pub path: Option<Vec<Vertex>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub verdict: bool,
    pub witness: Option<Witness>,
    pub method: Method,
    pub pairs_checked: usize,
}

impl VerifyReport {
    fn pass(method: Method, pairs_checked: usize) -> Self {
        VerifyReport {
            verdict: true,
            witness: None,
            method,
            pairs_checked,
        }
    }

    fn fail(method: Method, pairs_checked: usize, witness: Witness) -> Self {
        VerifyReport {
            verdict: false,
            witness: Some(witness),
            method,
            pairs_checked,
        }
    }
}

/// Removes closed sub-walks so that no vertex repeats. Whatever property
/// "all colours distinct" held on the walk still holds on the result.
pub(crate) fn shortcut(walk: &[Vertex]) -> Vec<Vertex> {
    let mut path: Vec<Vertex> = Vec::with_capacity(walk.len());
    for &v in walk {
        if let Some(pos) = path.iter().position(|&x| x == v) {
            path.truncate(pos + 1);
        } else {
            path.push(v);
        }
    }
    path
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shortcut_removes_loops() {
        assert_eq!(shortcut(&[0, 1, 2, 1, 3]), vec![0, 1, 3]);
        assert_eq!(shortcut(&[0, 1, 2, 0, 4]), vec![0, 4]);
        assert_eq!(shortcut(&[5]), vec![5]);
    }
}
