//! Seeded batch runs over `(n, r, trial)` grids.
//!
//! Every cell's seed is derived from `(base seed, n, r, trial)` alone, cells
//! run in parallel and are written back in grid order, and wall-clock times
//! go to a JSON sidecar rather than the CSV, so reruns give identical CSV
//! bytes.

mod report;

pub use report::{scaling_report, ScalingReport, SeriesTrend, SummaryRow};

use std::io::{Read, Write};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::edge_rainbow::{rc_min_degree, rc_random_regular};
use crate::error::{Error, Result};
use crate::graph::diameter;
use crate::random::{sample_regular, RegularSampler, Seed, REGULAR_ATTEMPTS};
use crate::verify::{
    check_edge_certificate, check_vertex_certificate, is_rainbow_edge_connected_exact,
    is_rainbow_vertex_connected_exact, DiameterModel, PairSelection, VerifyReport,
};
use crate::vertex_rainbow::rvc_random_regular;

/// First line of every results CSV; bump when columns change.
pub const CSV_VERSION_LINE: &str = "# rainbow results v1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExperimentKind {
    /// Random `r`-regular graph coloured by the Euler-split construction.
    MinDegree,
    /// Random `r`-regular graph as a union of two halves.
    RegularEdge,
    /// Random `r`-regular graph, vertex colouring from a local-lemma split.
    RegularVertex,
    /// Diameter of a cycle plus a random perfect matching.
    CyclePerfectMatching,
    /// Diameter of a cycle plus a random `⌊n/4⌋`-edge matching.
    CycleQuarterMatching,
}

impl ExperimentKind {
    fn uses_degree(self) -> bool {
        matches!(
            self,
            ExperimentKind::MinDegree | ExperimentKind::RegularEdge | ExperimentKind::RegularVertex
        )
    }

    pub fn name(self) -> &'static str {
        match self {
            ExperimentKind::MinDegree => "min-degree",
            ExperimentKind::RegularEdge => "regular-edge",
            ExperimentKind::RegularVertex => "regular-vertex",
            ExperimentKind::CyclePerfectMatching => "cycle-perfect-matching",
            ExperimentKind::CycleQuarterMatching => "cycle-quarter-matching",
        }
    }
}

impl std::str::FromStr for ExperimentKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        serde_json::from_value(serde_json::Value::String(s.into()))
            .map_err(|_| Error::Config(format!("unknown experiment kind {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "mode")]
pub enum VerifyMode {
    None,
    /// Certificate replay on every pair.
    Certificate,
    /// Certificate replay on `pairs` random pairs.
    Sample {
        pairs: usize,
    },
    Exact,
}

impl VerifyMode {
    fn as_arg(&self) -> String {
        match self {
            VerifyMode::None => "none".into(),
            VerifyMode::Certificate => "certificate".into(),
            VerifyMode::Sample { pairs } => format!("sample --pairs {pairs}"),
            VerifyMode::Exact => "exact".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub id: String,
    pub kind: ExperimentKind,
    pub n: Vec<usize>,
    /// Degrees; ignored (and may be empty) for the cycle models.
    #[serde(default)]
    pub r: Vec<usize>,
    pub trials: usize,
    pub seed: u64,
    #[serde(default = "default_verify")]
    pub verify: VerifyMode,
    #[serde(default)]
    pub csv: Option<String>,
    #[serde(default)]
    pub sidecar: Option<String>,
}

fn default_verify() -> VerifyMode {
    VerifyMode::None
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |field: &str, why: &str| Err(Error::Config(format!("{field}: {why}")));
        if self.id.is_empty() {
            return bad("id", "must not be empty");
        }
        if self.id.contains([',', '"', '\n']) {
            return bad("id", "must not contain commas, quotes or newlines");
        }
        if self.n.is_empty() {
            return bad("n", "empty n-list");
        }
        if self.kind.uses_degree() && self.r.is_empty() {
            return bad("r", "empty r-list");
        }
        if self.trials == 0 {
            return bad("trials", "must be positive");
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let config: ExperimentConfig = serde_json::from_str(text)?;
        config.validate()?;
        Ok(config)
    }

    /// `(n, r, trial)` in output order.
    pub fn cells(&self) -> Vec<(usize, Option<usize>, usize)> {
        let rs: Vec<Option<usize>> = if self.kind.uses_degree() {
            self.r.iter().map(|&r| Some(r)).collect()
        } else {
            vec![None]
        };
        let mut out = Vec::new();
        for &n in &self.n {
            for &r in &rs {
                for t in 0..self.trials {
                    out.push((n, r, t));
                }
            }
        }
        out
    }

    pub fn cell_seed(&self, n: usize, r: Option<usize>, trial: usize) -> Seed {
        Seed(self.seed).derive_path(&[n as u64, r.unwrap_or(0) as u64, trial as u64])
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultRow {
    pub experiment: String,
    pub kind: String,
    pub n: usize,
    pub r: Option<usize>,
    pub trial: usize,
    pub seed: u64,
    pub status: String,
    pub colours_used: Option<usize>,
    pub bound_value: Option<usize>,
    pub diam1: Option<usize>,
    pub diam2: Option<usize>,
    /// `|B|`: shared edges, or shared vertices (`|W1| + |W2|`).
    pub shared: Option<usize>,
    pub verdict: Option<String>,
    pub pairs_checked: Option<usize>,
    pub error: String,
    pub replay: String,
}

impl ResultRow {
    pub fn passed(&self) -> bool {
        self.status == "ok" && self.verdict.as_deref() != Some("fail")
    }
}

#[derive(Debug, Clone, Default)]
struct Measured {
    colours_used: Option<usize>,
    bound_value: Option<usize>,
    diam1: Option<usize>,
    diam2: Option<usize>,
    shared: Option<usize>,
    report: Option<VerifyReport>,
}

fn selection(mode: VerifyMode, seed: Seed) -> PairSelection {
    match mode {
        VerifyMode::Sample { pairs } => PairSelection::Sample {
            k: pairs,
            seed: seed.derive(99),
        },
        _ => PairSelection::All,
    }
}

fn degree(r: Option<usize>) -> Result<usize> {
    r.ok_or_else(|| Error::Config("r: missing degree".into()))
}

fn measure(
    kind: ExperimentKind,
    n: usize,
    r: Option<usize>,
    seed: Seed,
    mode: VerifyMode,
) -> Result<Measured> {
    let mut m = Measured::default();
    match kind {
        ExperimentKind::MinDegree => {
            let r = degree(r)?;
            let g = sample_regular(
                n,
                r,
                seed.derive(0),
                RegularSampler::auto(r),
                REGULAR_ATTEMPTS,
            )?;
            let out = rc_min_degree(&g)?;
            m.colours_used = Some(out.report.colours_used);
            m.bound_value = Some(out.report.colour_bound);
            m.diam1 = Some(out.report.diam1);
            m.diam2 = Some(out.report.diam2);
            m.shared = Some(out.report.shared);
            m.report = match mode {
                VerifyMode::None => None,
                VerifyMode::Exact => Some(is_rainbow_edge_connected_exact(&g, &out.colouring)?),
                _ => Some(check_edge_certificate(
                    &g,
                    &out.colouring,
                    selection(mode, seed),
                )?),
            };
        }
        ExperimentKind::RegularEdge => {
            let out = rc_random_regular(n, degree(r)?, seed)?;
            m.colours_used = Some(out.report.colours_used);
            m.bound_value = Some(out.report.bound);
            m.diam1 = Some(out.report.diam1);
            m.diam2 = Some(out.report.diam2);
            m.shared = Some(0);
            m.report = match mode {
                VerifyMode::None => None,
                VerifyMode::Exact => {
                    Some(is_rainbow_edge_connected_exact(&out.graph, &out.colouring)?)
                }
                _ => Some(check_edge_certificate(
                    &out.graph,
                    &out.colouring,
                    selection(mode, seed),
                )?),
            };
        }
        ExperimentKind::RegularVertex => {
            let out = rvc_random_regular(n, degree(r)?, seed)?;
            m.colours_used = Some(out.report.colours_used);
            m.bound_value = Some(out.report.bound);
            m.diam1 = Some(out.report.diam1);
            m.diam2 = Some(out.report.diam2);
            m.shared = Some(out.report.shared);
            m.report = match mode {
                VerifyMode::None => None,
                VerifyMode::Exact => Some(is_rainbow_vertex_connected_exact(
                    &out.graph,
                    &out.colouring,
                )?),
                _ => Some(check_vertex_certificate(
                    &out.graph,
                    &out.colouring,
                    selection(mode, seed),
                )?),
            };
        }
        ExperimentKind::CyclePerfectMatching | ExperimentKind::CycleQuarterMatching => {
            let model = if kind == ExperimentKind::CyclePerfectMatching {
                DiameterModel::CyclePerfectMatching
            } else {
                DiameterModel::CycleQuarterMatching
            };
            m.diam1 = Some(diameter(&model.sample(n, seed)?)?);
        }
    }
    Ok(m)
}

/// Shell command that recomputes one cell on its own.
pub fn replay_command(
    kind: ExperimentKind,
    n: usize,
    r: Option<usize>,
    seed: Seed,
    mode: VerifyMode,
) -> String {
    let degree = r.map(|r| format!(" --r {r}")).unwrap_or_default();
    format!(
        "rainbow run-cell --kind {} --n {n}{degree} --seed {} --verify {}",
        kind.name(),
        seed.0,
        mode.as_arg()
    )
}

/// Runs one cell; failures become rows with `status = "error"`.
pub fn run_cell(
    experiment: &str,
    kind: ExperimentKind,
    n: usize,
    r: Option<usize>,
    trial: usize,
    seed: Seed,
    mode: VerifyMode,
) -> ResultRow {
    let outcome = measure(kind, n, r, seed, mode);
    let mut row = ResultRow {
        experiment: experiment.to_string(),
        kind: kind.name().to_string(),
        n,
        r,
        trial,
        seed: seed.0,
        status: "ok".into(),
        colours_used: None,
        bound_value: None,
        diam1: None,
        diam2: None,
        shared: None,
        verdict: None,
        pairs_checked: None,
        error: String::new(),
        replay: replay_command(kind, n, r, seed, mode),
    };
    match outcome {
        Ok(m) => {
            row.colours_used = m.colours_used;
            row.bound_value = m.bound_value;
            row.diam1 = m.diam1;
            row.diam2 = m.diam2;
            row.shared = m.shared;
            if let Some(report) = m.report {
                row.verdict = Some(if report.verdict { "pass" } else { "fail" }.into());
                row.pairs_checked = Some(report.pairs_checked);
                if let Some(w) = report.witness {
                    row.error = format!("pair {:?}: {}", w.pair, w.explanation);
                }
            }
        }
        Err(e) => {
            row.status = "error".into();
            row.error = e.to_string();
        }
    }
    row
}

#[derive(Debug, Clone, Serialize)]
pub struct CellTiming {
    pub n: usize,
    pub r: Option<usize>,
    pub trial: usize,
    pub wall_ms: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Sidecar {
    pub config: ExperimentConfig,
    pub version: String,
    pub timings: Vec<CellTiming>,
    pub total_wall_ms: f64,
}

#[derive(Debug, Clone)]
pub struct ExperimentOutput {
    pub rows: Vec<ResultRow>,
    pub sidecar: Sidecar,
}

pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentOutput> {
    config.validate()?;
    let start = Instant::now();
    let results: Vec<(ResultRow, CellTiming)> = config
        .cells()
        .into_par_iter()
        .map(|(n, r, trial)| {
            let t0 = Instant::now();
            let seed = config.cell_seed(n, r, trial);
            let row = run_cell(&config.id, config.kind, n, r, trial, seed, config.verify);
            let timing = CellTiming {
                n,
                r,
                trial,
                wall_ms: t0.elapsed().as_secs_f64() * 1e3,
            };
            (row, timing)
        })
        .collect();
    let (rows, timings) = results.into_iter().unzip();
    Ok(ExperimentOutput {
        rows,
        sidecar: Sidecar {
            config: config.clone(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            timings,
            total_wall_ms: start.elapsed().as_secs_f64() * 1e3,
        },
    })
}

pub fn write_csv<W: Write>(rows: &[ResultRow], mut out: W) -> Result<()> {
    writeln!(out, "{CSV_VERSION_LINE}")?;
    let mut writer = csv::Writer::from_writer(out);
    for row in rows {
        writer.serialize(row)?;
    }
    writer.flush()?;
    Ok(())
}

pub fn read_csv<R: Read>(input: R) -> Result<Vec<ResultRow>> {
    let mut reader = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_reader(input);
    reader
        .deserialize()
        .map(|r| r.map_err(Error::from))
        .collect()
}
