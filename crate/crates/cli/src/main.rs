mod files;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rainbow_core::edge_rainbow::{
    expander_split, rc_min_degree, rc_random_regular, split_colouring, Decomposition, EdgeSplit,
};
use rainbow_core::experiment::{
    read_csv, run_cell, run_experiment, scaling_report, write_csv, ExperimentConfig,
    ExperimentKind, VerifyMode,
};
use rainbow_core::graph::{to_dot, to_dot_labelled, write_edge_list, Graph, DEFAULT_EXPANSION_CAP};
use rainbow_core::random::{
    oplus_union, random_hamiltonian_order, random_matching_edges, sample_pairing, sample_regular,
    subdivide_cycle_model, MatchingRule, RegularSampler, REGULAR_ATTEMPTS,
};
use rainbow_core::verify::{
    check_edge_certificate, check_vertex_certificate, is_rainbow_edge_connected_exact,
    is_rainbow_vertex_connected_exact, PairSelection,
};
use rainbow_core::vertex_rainbow::{rvc_colour_graph, rvc_random_regular_with, PartitionParams};
use rainbow_core::Seed;
use serde_json::json;

use files::{
    colouring_for, emit, emit_json, read_graph, read_json, Colouring, ColouringFile, SplitFile,
};

/// Rainbow colourings of graphs: generate, colour, verify, experiment.
#[derive(Parser)]
#[command(name = "rainbow", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample a graph from one of the random models.
    Generate(GenerateArgs),
    /// Rainbow edge colouring with a certificate.
    ColorEdges(ColorEdgesArgs),
    /// Rainbow vertex colouring of a regular graph with a certificate.
    ColorVertices(ColorVerticesArgs),
    /// Check a colouring; exit code 0 on pass, 1 on fail.
    Verify(VerifyArgs),
    /// Run an experiment grid to CSV.
    Experiment(ExperimentArgs),
    /// Summarize an experiment CSV.
    Report(ReportArgs),
    /// Recompute one experiment cell (the command stored in each CSV row).
    RunCell(RunCellArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Model {
    /// Configuration model; loops and parallel edges are kept.
    Pairing,
    SimpleRegular,
    Hamcycle,
    Matching,
    /// Regular graph as an edge-disjoint union of two random halves.
    Oplus,
    /// Cycle with a random ⌊n/4⌋-edge matching, built from a gap sequence.
    Theorem5,
}

#[derive(Clone, Copy, ValueEnum)]
enum Rule {
    AvoidCycle,
    Unrestricted,
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long, value_enum)]
    model: Model,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    r: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Matching rule for `theorem5`.
    #[arg(long, value_enum, default_value = "avoid-cycle")]
    rule: Rule,
    /// Edge list destination (stdout by default).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write the construction record as JSON.
    #[arg(long)]
    json: Option<PathBuf>,
    #[arg(long)]
    dot: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum EdgeMethod {
    /// Layered colouring of a given two-sided split (`--split`).
    Lemma1,
    /// Euler split of a graph with minimum degree >= 4.
    Mindeg,
    /// Random split into two expanders, validated exactly.
    Expander,
    /// Samples a random regular graph from `--n`, `--r` and colours it.
    Regular,
}

#[derive(Args)]
struct ColorEdgesArgs {
    /// Edge-list graph; `regular` samples its own graph instead.
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long, value_enum)]
    method: EdgeMethod,
    /// JSON with `edges1` and `edges2` pair lists, for `lemma1`.
    #[arg(long)]
    split: Option<PathBuf>,
    #[arg(long, default_value_t = 0.5)]
    lambda: f64,
    #[arg(long, default_value_t = 100)]
    retries: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Size and degree for `regular`.
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    r: Option<usize>,
    /// Where `regular` writes the graph it sampled.
    #[arg(long)]
    graph_out: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    dot: Option<PathBuf>,
}

#[derive(Args)]
struct ColorVerticesArgs {
    /// Regular edge-list graph; without it one is sampled from `--n`, `--r`.
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long, default_value_t = 0.11)]
    gamma: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    max_resamples: Option<usize>,
    /// Run even if the local-lemma condition fails for this degree.
    #[arg(long)]
    best_effort: bool,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    r: Option<usize>,
    #[arg(long)]
    graph_out: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    dot: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Exact,
    Certificate,
    Sample,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    colouring: PathBuf,
    #[arg(long, value_enum, default_value = "certificate")]
    mode: Mode,
    #[arg(long, default_value_t = 10_000)]
    pairs: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Report destination (stdout by default).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ExperimentArgs {
    #[arg(long)]
    config: PathBuf,
    /// CSV destination; overrides the config's `csv`.
    #[arg(long)]
    out: Option<PathBuf>,
    /// JSON sidecar with the config and timings; defaults to `<out>.json`.
    #[arg(long)]
    sidecar: Option<PathBuf>,
}

#[derive(Args)]
struct ReportArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum CellVerify {
    None,
    Certificate,
    Sample,
    Exact,
}

#[derive(Args)]
struct RunCellArgs {
    #[arg(long)]
    kind: String,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    r: Option<usize>,
    /// The cell seed as printed in the CSV.
    #[arg(long)]
    seed: u64,
    #[arg(long, value_enum, default_value = "none")]
    verify: CellVerify,
    #[arg(long, default_value_t = 10_000)]
    pairs: usize,
}

fn need(value: Option<usize>, flag: &str) -> Result<usize> {
    value.with_context(|| format!("--{flag} is required here"))
}

fn write_dot(path: Option<&Path>, dot: impl FnOnce() -> String) -> Result<()> {
    if let Some(p) = path {
        fs::write(p, dot()).with_context(|| format!("writing {}", p.display()))?;
    }
    Ok(())
}

fn generate(args: GenerateArgs) -> Result<bool> {
    let seed = Seed(args.seed);
    let n = args.n;
    let (graph, record) = match args.model {
        Model::Pairing => {
            // loops and parallel edges are part of the model: write pairs raw
            let r = need(args.r, "r")?;
            let p = sample_pairing(n, r, seed)?;
            let mg = p.to_multigraph();
            let mut text = format!("{} {}\n", n, mg.m());
            for &(u, v) in mg.edges() {
                text.push_str(&format!("{u} {v}\n"));
            }
            emit(args.out.as_deref(), &text)?;
            if let Some(path) = &args.json {
                emit_json(
                    Some(path),
                    &json!({"model": "pairing", "n": n, "r": r, "partner": p.partner}),
                )?;
            }
            return Ok(true);
        }
        Model::SimpleRegular => {
            let r = need(args.r, "r")?;
            let sampler = RegularSampler::auto(r);
            let g = sample_regular(n, r, seed, sampler, REGULAR_ATTEMPTS)?;
            (
                g,
                json!({"model": "simple-regular", "n": n, "r": r, "sampler": sampler}),
            )
        }
        Model::Hamcycle => {
            let order = random_hamiltonian_order(n, seed)?;
            let edges: Vec<_> = (0..n).map(|i| (order[i], order[(i + 1) % n])).collect();
            (
                Graph::new(n, &edges)?,
                json!({"model": "hamcycle", "n": n, "order": order}),
            )
        }
        Model::Matching => {
            let m = need(args.m, "m")?;
            let edges = random_matching_edges(n, m, seed)?;
            (
                Graph::new(n, &edges)?,
                json!({"model": "matching", "n": n, "matching": edges}),
            )
        }
        Model::Oplus => {
            let r = need(args.r, "r")?;
            let decomposition = Decomposition::for_degree(n, r)?;
            let union = oplus_union(n, &decomposition.parts(n), seed, REGULAR_ATTEMPTS)?;
            let (edges1, edges2) = decomposition.halves(n, &union.parts);
            let record = json!({
                "model": "oplus", "n": n, "r": r,
                "decomposition": decomposition,
                "attempts": union.attempts,
                "parts": union.parts,
                "edges1": edges1,
                "edges2": edges2,
            });
            (union.graph, record)
        }
        Model::Theorem5 => {
            let rule = match args.rule {
                Rule::AvoidCycle => MatchingRule::AvoidCycle,
                Rule::Unrestricted => MatchingRule::Unrestricted,
            };
            let (g, rec) = subdivide_cycle_model(n, seed, rule)?;
            (
                g,
                json!({"model": "theorem5", "n": n, "rule": rule, "record": rec}),
            )
        }
    };
    emit(args.out.as_deref(), &write_edge_list(&graph))?;
    if let Some(path) = &args.json {
        emit_json(Some(path), &record)?;
    }
    write_dot(args.dot.as_deref(), || to_dot(&graph, |_| None))?;
    Ok(true)
}

fn color_edges(args: ColorEdgesArgs) -> Result<bool> {
    let input = || -> Result<Graph> {
        read_graph(
            args.input
                .as_deref()
                .context("--input is required for this method")?,
        )
    };
    let (graph, colouring, report) = match args.method {
        EdgeMethod::Lemma1 => {
            let g = input()?;
            let split_path = args
                .split
                .as_deref()
                .context("--split is required for lemma1")?;
            let s: SplitFile = read_json(split_path)?;
            let split = EdgeSplit::from_pairs(g.clone(), &s.edges1, &s.edges2)?;
            let c = split_colouring(&split)?;
            let report = json!({
                "diam1": c.diam1, "diam2": c.diam2, "shared": c.shared,
                "colours_used": c.colours_used, "bound": c.bound(),
            });
            (g, c.colouring, report)
        }
        EdgeMethod::Mindeg => {
            let g = input()?;
            let out = rc_min_degree(&g)?;
            let report = serde_json::to_value(&out.report)?;
            (g, out.colouring, report)
        }
        EdgeMethod::Expander => {
            let g = input()?;
            let s = expander_split(
                &g,
                args.lambda,
                Seed(args.seed),
                args.retries,
                DEFAULT_EXPANSION_CAP,
            )?;
            let c = split_colouring(&s.split)?;
            let report = json!({
                "phi": s.phi.as_f64(), "target": s.target,
                "expansion1": s.expansion1.as_f64(), "expansion2": s.expansion2.as_f64(),
                "attempts": s.attempts, "diam1": c.diam1, "diam2": c.diam2,
                "colours_used": c.colours_used, "bound": c.bound(),
            });
            (g, c.colouring, report)
        }
        EdgeMethod::Regular => {
            if args.input.is_some() {
                bail!("regular samples its own graph; pass --n, --r and --seed instead of --input");
            }
            let out = rc_random_regular(need(args.n, "n")?, need(args.r, "r")?, Seed(args.seed))?;
            if let Some(p) = &args.graph_out {
                emit(Some(p), &write_edge_list(&out.graph))?;
            }
            let report = serde_json::to_value(&out.report)?;
            (out.graph, out.colouring, report)
        }
    };
    emit_json(
        args.out.as_deref(),
        &ColouringFile::from_edges(&graph, &colouring, Some(report)),
    )?;
    write_dot(args.dot.as_deref(), || {
        to_dot(&graph, |e| Some(colouring.colours[e].to_string()))
    })?;
    Ok(true)
}

fn color_vertices(args: ColorVerticesArgs) -> Result<bool> {
    let mut params = PartitionParams {
        gamma: args.gamma,
        best_effort: args.best_effort,
        ..PartitionParams::default()
    };
    if let Some(k) = args.max_resamples {
        params = params.with_resample_budget(k);
    }
    let out = match &args.input {
        Some(path) => rvc_colour_graph(read_graph(path)?, &params, Seed(args.seed))?,
        None => {
            let out = rvc_random_regular_with(
                need(args.n, "n")?,
                need(args.r, "r")?,
                Seed(args.seed),
                &params,
            )?;
            if let Some(p) = &args.graph_out {
                emit(Some(p), &write_edge_list(&out.graph))?;
            }
            out
        }
    };
    let report = serde_json::to_value(&out.report)?;
    emit_json(
        args.out.as_deref(),
        &ColouringFile::from_vertices(&out.colouring, Some(report)),
    )?;
    write_dot(args.dot.as_deref(), || {
        to_dot_labelled(
            &out.graph,
            |v| Some(out.colouring.colours[v].to_string()),
            |_| None,
        )
    })?;
    Ok(true)
}

fn verify(args: VerifyArgs) -> Result<bool> {
    let g = read_graph(&args.graph)?;
    let file: ColouringFile = read_json(&args.colouring)?;
    let selection = match args.mode {
        Mode::Sample => PairSelection::Sample {
            k: args.pairs,
            seed: Seed(args.seed),
        },
        _ => PairSelection::All,
    };
    let report = match (colouring_for(&g, file)?, args.mode) {
        (Colouring::Edge(c), Mode::Exact) => is_rainbow_edge_connected_exact(&g, &c)?,
        (Colouring::Vertex(c), Mode::Exact) => is_rainbow_vertex_connected_exact(&g, &c)?,
        (Colouring::Edge(c), _) => check_edge_certificate(&g, &c, selection)?,
        (Colouring::Vertex(c), _) => check_vertex_certificate(&g, &c, selection)?,
    };
    emit_json(args.out.as_deref(), &report)?;
    Ok(report.verdict)
}

fn experiment(args: ExperimentArgs) -> Result<bool> {
    let text = fs::read_to_string(&args.config)
        .with_context(|| format!("reading {}", args.config.display()))?;
    let config = ExperimentConfig::from_json(&text)?;
    let out_path = args
        .out
        .or_else(|| config.csv.as_ref().map(PathBuf::from))
        .context("no CSV destination: pass --out or set `csv` in the config")?;
    let sidecar_path = args
        .sidecar
        .or_else(|| config.sidecar.as_ref().map(PathBuf::from))
        .unwrap_or_else(|| {
            let mut p = out_path.clone().into_os_string();
            p.push(".json");
            p.into()
        });
    let output = run_experiment(&config)?;
    let mut buf = Vec::new();
    write_csv(&output.rows, &mut buf)?;
    fs::write(&out_path, buf).with_context(|| format!("writing {}", out_path.display()))?;
    emit_json(Some(&sidecar_path), &output.sidecar)?;
    let failed = output.rows.iter().filter(|r| !r.passed()).count();
    eprintln!("{} rows, {failed} failed or errored", output.rows.len());
    Ok(true)
}

fn report(args: ReportArgs) -> Result<bool> {
    let file =
        fs::File::open(&args.input).with_context(|| format!("reading {}", args.input.display()))?;
    let rows = read_csv(file).with_context(|| format!("parsing {}", args.input.display()))?;
    emit_json(args.out.as_deref(), &scaling_report(&rows)?)?;
    Ok(true)
}

fn run_cell_cmd(args: RunCellArgs) -> Result<bool> {
    let kind: ExperimentKind = args.kind.parse()?;
    let mode = match args.verify {
        CellVerify::None => VerifyMode::None,
        CellVerify::Certificate => VerifyMode::Certificate,
        CellVerify::Sample => VerifyMode::Sample { pairs: args.pairs },
        CellVerify::Exact => VerifyMode::Exact,
    };
    let row = run_cell("replay", kind, args.n, args.r, 0, Seed(args.seed), mode);
    let mut buf = Vec::new();
    write_csv(std::slice::from_ref(&row), &mut buf)?;
    emit(None, &String::from_utf8(buf)?)?;
    Ok(row.passed())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Generate(a) => generate(a),
        Command::ColorEdges(a) => color_edges(a),
        Command::ColorVertices(a) => color_vertices(a),
        Command::Verify(a) => verify(a),
        Command::Experiment(a) => experiment(a),
        Command::Report(a) => report(a),
        Command::RunCell(a) => run_cell_cmd(a),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
