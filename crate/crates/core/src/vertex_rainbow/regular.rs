use serde::Serialize;

use super::{
    lll_partition, stitch_components, vertex_split_colouring, Partition, PartitionParams,
    VertexColouring, VertexSplit,
};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::random::{sample_regular, RegularSampler, Seed, REGULAR_ATTEMPTS};

#[derive(Debug, Clone, Serialize)]
pub struct RvcReport {
    pub n: usize,
    pub r: usize,
    pub threshold: usize,
    pub resamples: usize,
    pub w1: usize,
    pub w2: usize,
    pub shared: usize,
    pub diam1: usize,
    pub diam2: usize,
    pub colours_used: usize,
    /// `diam(G[V1]) + diam(G[V2]) + |B| + 2`.
    pub bound: usize,
    /// `ln n / ln r`, the scale of the asymptotic bound.
    pub log_ratio: f64,
}

#[derive(Debug, Clone)]
pub struct RvcColouring {
    pub graph: Graph,
    pub partition: Partition,
    pub split: VertexSplit,
    pub colouring: VertexColouring,
    pub report: RvcReport,
}

pub fn rvc_random_regular(n: usize, r: usize, seed: Seed) -> Result<RvcColouring> {
    rvc_random_regular_with(n, r, seed, &PartitionParams::default())
}

/// Samples `G_{n,r}`, partitions it, stitches each part into a connected set
/// and colours the resulting split.
pub fn rvc_random_regular_with(
    n: usize,
    r: usize,
    seed: Seed,
    params: &PartitionParams,
) -> Result<RvcColouring> {
    if !params.best_effort && !params.lll_feasible(r) {
        return Err(Error::InvalidParameter(format!(
            "degree {r} too small for gamma = {} (local lemma quantity {:.4} >= 1)",
            params.gamma,
            params.lll_quantity(r)
        )));
    }
    let graph = sample_regular(
        n,
        r,
        seed.derive(0),
        RegularSampler::auto(r),
        REGULAR_ATTEMPTS,
    )?;
    rvc_colour_graph(graph, params, seed.derive(1))
}

/// The partition, stitch and colour stages on a given regular graph.
pub fn rvc_colour_graph(
    graph: Graph,
    params: &PartitionParams,
    seed: Seed,
) -> Result<RvcColouring> {
    let partition = lll_partition(&graph, params, seed)?;
    let u1 = partition.mask(true);
    let u2 = partition.mask(false);
    let w1 = stitch_components(&graph, &u1)?;
    let w2 = stitch_components(&graph, &u2)?;
    let (mut v1, mut v2) = (u1, u2);
    w1.iter().for_each(|&v| v1[v] = true);
    w2.iter().for_each(|&v| v2[v] = true);
    let split = VertexSplit::from_masks(graph.clone(), v1, v2)?;
    let coloured = vertex_split_colouring(&split)?;
    let (n, r) = (graph.n(), graph.regular_degree().unwrap_or(0));
    let report = RvcReport {
        n,
        r,
        threshold: partition.threshold,
        resamples: partition.resamples,
        w1: w1.len(),
        w2: w2.len(),
        shared: coloured.shared,
        diam1: coloured.diam1,
        diam2: coloured.diam2,
        colours_used: coloured.colours_used,
        bound: coloured.bound(),
        log_ratio: (n as f64).ln() / (r as f64).ln(),
    };
    Ok(RvcColouring {
        graph,
        partition,
        split,
        colouring: coloured.colouring,
        report,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::is_connected;

    #[test]
    fn n200_r30_sides_connected() {
        let out = rvc_random_regular(200, 30, Seed(5)).unwrap();
        assert_eq!(out.graph.regular_degree(), Some(30));
        for side in [out.split.side1(), out.split.side2()] {
            assert!(is_connected(&out.graph.induced_subgraph(side).0));
        }
        assert_eq!(out.report.shared, out.report.w1 + out.report.w2);
        assert!(out.report.colours_used <= out.report.bound);
    }

    #[test]
    fn degree_27_rejected() {
        assert!(matches!(
            rvc_random_regular(100, 27, Seed(0)),
            Err(Error::InvalidParameter(_))
        ));
    }
}
