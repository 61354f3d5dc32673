use std::collections::BTreeMap;

use serde::Serialize;

use super::ResultRow;
use crate::error::{Error, Result};

/// Per-`(experiment, r, n)` medians over successful rows.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SummaryRow {
    pub experiment: String,
    pub kind: String,
    pub n: usize,
    pub r: Option<usize>,
    pub rows: usize,
    pub failures: usize,
    pub median_colours: Option<f64>,
    pub median_bound: Option<f64>,
    /// Median of `diam1` for the cycle models, of `max(diam1, diam2)` else.
    pub median_diam: Option<f64>,
    /// `colours / (ln n / ln r)`.
    pub colours_over_log_ratio: Option<f64>,
    pub colours_over_ln_n: Option<f64>,
    pub diam_over_log2_n: Option<f64>,
    pub diam_over_ln_n: Option<f64>,
}

/// One ratio column along increasing `n`. Trend flags need at least two
/// sizes and are `None` otherwise.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SeriesTrend {
    pub experiment: String,
    pub r: Option<usize>,
    pub column: String,
    pub n: Vec<usize>,
    pub values: Vec<f64>,
    /// Strictly increasing at every step: the ratio is not bounded-looking.
    pub monotone_increasing: Option<bool>,
    /// Non-increasing over the last three steps (the last four sizes).
    pub non_increasing_tail: Option<bool>,
    /// Largest `|v[k+1] / v[k] - 1|`.
    pub max_step_change: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScalingReport {
    pub summary: Vec<SummaryRow>,
    pub trends: Vec<SeriesTrend>,
}

fn median_f(mut xs: Vec<f64>) -> Option<f64> {
    if xs.is_empty() {
        return None;
    }
    xs.sort_by(f64::total_cmp);
    let k = xs.len();
    Some(if k % 2 == 1 {
        xs[k / 2]
    } else {
        (xs[k / 2 - 1] + xs[k / 2]) / 2.0
    })
}

fn trend(experiment: &str, r: Option<usize>, column: &str, points: &[(usize, f64)]) -> SeriesTrend {
    let values: Vec<f64> = points.iter().map(|p| p.1).collect();
    let steps: Vec<(f64, f64)> = values.windows(2).map(|w| (w[0], w[1])).collect();
    let flags = !steps.is_empty();
    let tail_start = steps.len().saturating_sub(3);
    SeriesTrend {
        experiment: experiment.to_string(),
        r,
        column: column.to_string(),
        n: points.iter().map(|p| p.0).collect(),
        values: values.clone(),
        monotone_increasing: flags.then(|| steps.iter().all(|(a, b)| b > a)),
        non_increasing_tail: flags.then(|| steps[tail_start..].iter().all(|(a, b)| b <= a)),
        max_step_change: flags.then(|| {
            steps
                .iter()
                .map(|(a, b)| (b / a - 1.0).abs())
                .fold(0.0, f64::max)
        }),
    }
}

pub fn scaling_report(rows: &[ResultRow]) -> Result<ScalingReport> {
    if rows.is_empty() {
        return Err(Error::InvalidParameter("no result rows".into()));
    }
    let mut groups: BTreeMap<(String, Option<usize>, usize), Vec<&ResultRow>> = BTreeMap::new();
    for row in rows {
        groups
            .entry((row.experiment.clone(), row.r, row.n))
            .or_default()
            .push(row);
    }
    let mut summary = Vec::new();
    for ((experiment, r, n), group) in &groups {
        let ok: Vec<&&ResultRow> = group.iter().filter(|row| row.passed()).collect();
        let kind = group[0].kind.clone();
        let cycle = kind.starts_with("cycle");
        let pick = |f: &dyn Fn(&ResultRow) -> Option<usize>| {
            median_f(
                ok.iter()
                    .filter_map(|row| f(row))
                    .map(|x| x as f64)
                    .collect(),
            )
        };
        let median_colours = pick(&|row| row.colours_used);
        let median_bound = pick(&|row| row.bound_value);
        let median_diam = if cycle {
            pick(&|row| row.diam1)
        } else {
            pick(&|row| Some(row.diam1?.max(row.diam2?)))
        };
        let ln_n = (*n as f64).ln();
        let log_ratio = r.filter(|&r| r >= 2).map(|r| ln_n / (r as f64).ln());
        summary.push(SummaryRow {
            experiment: experiment.clone(),
            kind,
            n: *n,
            r: *r,
            rows: group.len(),
            failures: group.len() - ok.len(),
            median_colours,
            median_bound,
            median_diam,
            colours_over_log_ratio: median_colours.zip(log_ratio).map(|(c, l)| c / l),
            colours_over_ln_n: median_colours.map(|c| c / ln_n),
            diam_over_log2_n: median_diam.map(|d| d / (*n as f64).log2()),
            diam_over_ln_n: median_diam.map(|d| d / ln_n),
        });
    }

    let mut trends = Vec::new();
    let mut series: BTreeMap<(String, Option<usize>), Vec<&SummaryRow>> = BTreeMap::new();
    for s in &summary {
        series
            .entry((s.experiment.clone(), s.r))
            .or_default()
            .push(s);
    }
    type Column = (&'static str, fn(&SummaryRow) -> Option<f64>);
    let columns: [Column; 4] = [
        ("colours_over_log_ratio", |s| s.colours_over_log_ratio),
        ("colours_over_ln_n", |s| s.colours_over_ln_n),
        ("diam_over_log2_n", |s| s.diam_over_log2_n),
        ("diam_over_ln_n", |s| s.diam_over_ln_n),
    ];
    for ((experiment, r), points) in &series {
        for (name, get) in columns {
            let values: Vec<(usize, f64)> = points
                .iter()
                .filter_map(|s| get(s).map(|v| (s.n, v)))
                .collect();
            if !values.is_empty() {
                trends.push(trend(experiment, *r, name, &values));
            }
        }
    }
    Ok(ScalingReport { summary, trends })
}
