use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{diameter, Graph};
use crate::random::{cycle_plus_matching, sample_regular, RegularSampler, Seed, REGULAR_ATTEMPTS};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum DiameterModel {
    /// `C_n` plus a uniform perfect matching.
    CyclePerfectMatching,
    /// `C_n` plus a uniform `⌊n/4⌋`-edge matching.
    CycleQuarterMatching,
    Regular {
        r: usize,
    },
    CycleOnly,
}

impl DiameterModel {
    pub fn name(&self) -> String {
        match self {
            DiameterModel::CyclePerfectMatching => "cycle-perfect-matching".into(),
            DiameterModel::CycleQuarterMatching => "cycle-quarter-matching".into(),
            DiameterModel::Regular { r } => format!("regular-{r}"),
            DiameterModel::CycleOnly => "cycle".into(),
        }
    }

    pub fn sample(&self, n: usize, seed: Seed) -> Result<Graph> {
        match *self {
            DiameterModel::CyclePerfectMatching => {
                if n % 2 == 1 {
                    return Err(Error::InvalidParameter(format!(
                        "perfect matching needs even n, got {n}"
                    )));
                }
                Ok(cycle_plus_matching(n, n / 2, seed)?.0)
            }
            DiameterModel::CycleQuarterMatching => Ok(cycle_plus_matching(n, n / 4, seed)?.0),
            DiameterModel::Regular { r } => {
                sample_regular(n, r, seed, RegularSampler::auto(r), REGULAR_ATTEMPTS)
            }
            DiameterModel::CycleOnly => {
                if n < 3 {
                    return Err(Error::InvalidParameter(format!(
                        "cycle needs n >= 3, got {n}"
                    )));
                }
                Ok(Graph::cycle(n))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiameterRow {
    pub model: String,
    pub n: usize,
    pub trials: usize,
    pub min: usize,
    pub median: f64,
    pub max: usize,
    pub median_over_log2_n: f64,
    pub median_over_ln_n: f64,
}

pub(crate) fn median(sorted: &[usize]) -> f64 {
    let k = sorted.len();
    if k % 2 == 1 {
        sorted[k / 2] as f64
    } else {
        (sorted[k / 2 - 1] + sorted[k / 2]) as f64 / 2.0
    }
}

/// Diameter spread per `n`. Trial `t` at size `n` uses the seed derived
/// from `(n, t)`, so grids can grow without changing existing cells.
pub fn diameter_statistics(
    model: DiameterModel,
    ns: &[usize],
    trials: usize,
    seed: Seed,
) -> Result<Vec<DiameterRow>> {
    if trials == 0 {
        return Err(Error::InvalidParameter("trials must be positive".into()));
    }
    ns.iter()
        .map(|&n| {
            let mut diams = (0..trials as u64)
                .into_par_iter()
                .map(|t| diameter(&model.sample(n, seed.derive_path(&[n as u64, t]))?))
                .collect::<Result<Vec<_>>>()?;
            diams.sort_unstable();
            let med = median(&diams);
            Ok(DiameterRow {
                model: model.name(),
                n,
                trials,
                min: diams[0],
                median: med,
                max: diams[trials - 1],
                median_over_log2_n: med / (n as f64).log2(),
                median_over_ln_n: med / (n as f64).ln(),
            })
        })
        .collect()
}

/// Exact diameter distribution of `C_n` plus a uniform perfect matching,
/// over all `(n - 1)!!` matchings: diameter → number of matchings.
pub fn cycle_matching_diameter_distribution(n: usize) -> Result<BTreeMap<usize, u64>> {
    if n % 2 == 1 || !(4..=14).contains(&n) {
        return Err(Error::InvalidParameter(format!(
            "exhaustive matching enumeration needs even 4 <= n <= 14, got {n}"
        )));
    }
    fn rec(mate: &mut [usize], n: usize, out: &mut BTreeMap<usize, u64>) {
        let Some(p) = mate.iter().position(|&q| q == usize::MAX) else {
            let mut edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
            edges.extend((0..n).filter(|&i| i < mate[i]).map(|i| (i, mate[i])));
            let g = Graph::new(n, &edges).expect("valid edges");
            *out.entry(diameter(&g).expect("contains a cycle"))
                .or_insert(0) += 1;
            return;
        };
        for q in p + 1..n {
            if mate[q] == usize::MAX {
                mate[p] = q;
                mate[q] = p;
                rec(mate, n, out);
                mate[p] = usize::MAX;
                mate[q] = usize::MAX;
            }
        }
    }
    let mut out = BTreeMap::new();
    rec(&mut vec![usize::MAX; n], n, &mut out);
    Ok(out)
}
