use petgraph::unionfind::UnionFind;
use serde::Serialize;

use super::{split_colouring, EdgeColouring, EdgeSplit};
use crate::error::{Error, Result};
use crate::graph::{euler_circuit, is_connected, Graph, Multigraph};

/// Halves the edge set by alternating along an Eulerian circuit.
///
/// Odd-degree vertices are paired in increasing id order by auxiliary edges
/// (parallel to real edges where they happen to be adjacent), the circuit is
/// rotated to start on an auxiliary edge, and edge `j` of the circuit goes to
/// `F1` for even `j` and `F2` for odd `j` (1-based). With the auxiliary edges
/// removed, a vertex of degree `d` keeps at least `⌊(d - 1)/2⌋` edges on each
/// side.
pub fn euler_degree_split(g: &Graph) -> Result<(Vec<usize>, Vec<usize>)> {
    if !is_connected(g) {
        return Err(Error::Disconnected);
    }
    let odd: Vec<usize> = (0..g.n()).filter(|&v| g.degree(v) % 2 == 1).collect();
    let mut edges = g.edges().to_vec();
    edges.extend(odd.chunks_exact(2).map(|p| (p[0], p[1])));
    let augmented = Multigraph::new(g.n(), &edges)?;
    let mut circuit = euler_circuit(&augmented)?;

    let real = g.m();
    if let Some(first_aux) = circuit.iter().position(|&e| e >= real) {
        circuit.rotate_left(first_aux);
    }
    let mut f1 = Vec::with_capacity(real / 2 + 1);
    let mut f2 = Vec::with_capacity(real / 2 + 1);
    for (pos, &e) in circuit.iter().enumerate() {
        if e >= real {
            continue;
        }
        if (pos + 1) % 2 == 0 {
            f1.push(e);
        } else {
            f2.push(e);
        }
    }
    f1.sort_unstable();
    f2.sort_unstable();
    Ok((f1, f2))
}

/// Edges of `g` whose addition makes `(V, F ∪ added)` connected: a spanning
/// forest of `g` with the components of `(V, F)` contracted, scanning edges
/// in index order.
pub fn connect_components(g: &Graph, f: &[usize]) -> Result<Vec<usize>> {
    if !is_connected(g) {
        return Err(Error::Disconnected);
    }
    let mut uf = UnionFind::<usize>::new(g.n());
    let mut in_f = vec![false; g.m()];
    for &e in f {
        let (u, v) = *g
            .edges()
            .get(e)
            .ok_or_else(|| Error::InvalidParameter(format!("edge index {e} out of range")))?;
        in_f[e] = true;
        uf.union(u, v);
    }
    let mut added = Vec::new();
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        if !in_f[e] && uf.union(u, v) {
            added.push(e);
        }
    }
    Ok(added)
}

#[derive(Debug, Clone, Serialize)]
pub struct MinDegreeReport {
    pub n: usize,
    pub min_degree: usize,
    pub colours_used: usize,
    /// `⌈16n/δ⌉`.
    pub colour_bound: usize,
    pub added1: usize,
    pub added2: usize,
    /// `2n/δ`.
    pub added_limit: f64,
    pub shared: usize,
    pub diam1: usize,
    pub diam2: usize,
    /// `6n/δ`.
    pub diam_limit: f64,
    pub added_within_limit: bool,
    pub diam_within_limit: bool,
}

#[derive(Debug, Clone)]
pub struct MinDegreeColouring {
    pub colouring: EdgeColouring,
    pub split: EdgeSplit,
    pub report: MinDegreeReport,
}

/// Euler split, reconnect both halves, then the layered colouring. Fails if
/// the result uses more than `⌈16n/δ⌉` colours; the intermediate limits on
/// added edges and diameters are reported as flags.
pub fn rc_min_degree(g: &Graph) -> Result<MinDegreeColouring> {
    let delta = g.min_degree();
    if delta < 4 {
        return Err(Error::InvalidParameter(format!(
            "minimum degree must be at least 4, got {delta}"
        )));
    }
    let (f1, f2) = euler_degree_split(g)?;
    let add1 = connect_components(g, &f1)?;
    let add2 = connect_components(g, &f2)?;
    let e1: Vec<usize> = f1.iter().chain(&add1).copied().collect();
    let e2: Vec<usize> = f2.iter().chain(&add2).copied().collect();
    let split = EdgeSplit::new(g.clone(), e1, e2)?;
    let coloured = split_colouring(&split)?;

    let n = g.n();
    let colour_bound = (16 * n).div_ceil(delta);
    let added_limit = 2.0 * n as f64 / delta as f64;
    let diam_limit = 6.0 * n as f64 / delta as f64;
    let report = MinDegreeReport {
        n,
        min_degree: delta,
        colours_used: coloured.colours_used,
        colour_bound,
        added1: add1.len(),
        added2: add2.len(),
        added_limit,
        shared: coloured.shared,
        diam1: coloured.diam1,
        diam2: coloured.diam2,
        diam_limit,
        added_within_limit: add1.len().max(add2.len()) as f64 <= added_limit,
        diam_within_limit: coloured.diam1.max(coloured.diam2) as f64 <= diam_limit,
    };
    if report.colours_used > colour_bound {
        return Err(Error::BoundViolation(format!(
            "{} colours exceed ⌈16n/δ⌉ = {colour_bound}",
            report.colours_used
        )));
    }
    let mut colouring = coloured.colouring;
    colouring.bound = Some(colour_bound.min(coloured.diam1 + coloured.diam2 + coloured.shared));
    Ok(MinDegreeColouring {
        colouring,
        split,
        report,
    })
}
