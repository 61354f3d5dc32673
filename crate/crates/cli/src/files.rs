use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use rainbow_core::edge_rainbow::{EdgeCertificate, EdgeColouring};
use rainbow_core::graph::{parse_edge_list, Graph, Vertex};
use rainbow_core::vertex_rainbow::{VertexCertificate, VertexColouring};
use serde::{Deserialize, Serialize};

/// On-disk colouring: `colors` lists `[u, v, c]` for edges or `[v, c]` for
/// vertices.
#[derive(Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ColouringFile {
    Edge {
        colors: Vec<(Vertex, Vertex, u32)>,
        certificate: Option<EdgeCertificate>,
        bound: Option<usize>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        report: Option<serde_json::Value>,
    },
    Vertex {
        colors: Vec<(Vertex, u32)>,
        certificate: Option<VertexCertificate>,
        bound: Option<usize>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        report: Option<serde_json::Value>,
    },
}

impl ColouringFile {
    pub fn from_edges(g: &Graph, col: &EdgeColouring, report: Option<serde_json::Value>) -> Self {
        ColouringFile::Edge {
            colors: g
                .edges()
                .iter()
                .zip(&col.colours)
                .map(|(&(u, v), &c)| (u, v, c))
                .collect(),
            certificate: col.certificate.clone(),
            bound: col.bound,
            report,
        }
    }

    pub fn from_vertices(col: &VertexColouring, report: Option<serde_json::Value>) -> Self {
        ColouringFile::Vertex {
            colors: col.colours.iter().copied().enumerate().collect(),
            certificate: col.certificate.clone(),
            bound: col.bound,
            report,
        }
    }
}

pub enum Colouring {
    Edge(EdgeColouring),
    Vertex(VertexColouring),
}

/// Checks that every edge (or vertex) of `g` gets exactly one colour.
pub fn colouring_for(g: &Graph, file: ColouringFile) -> Result<Colouring> {
    match file {
        ColouringFile::Edge {
            colors,
            certificate,
            bound,
            ..
        } => {
            let mut colours = vec![None; g.m()];
            for (u, v, c) in colors {
                let e = g
                    .edge_index(u, v)
                    .with_context(|| format!("coloured pair ({u}, {v}) is not an edge"))?;
                if colours[e].replace(c).is_some() {
                    bail!("edge ({u}, {v}) coloured twice");
                }
            }
            let colours = colours
                .into_iter()
                .enumerate()
                .map(|(e, c)| c.with_context(|| format!("edge {:?} has no colour", g.edge(e))))
                .collect::<Result<Vec<_>>>()?;
            Ok(Colouring::Edge(EdgeColouring {
                colours,
                certificate,
                bound,
            }))
        }
        ColouringFile::Vertex {
            colors,
            certificate,
            bound,
            ..
        } => {
            let mut colours = vec![None; g.n()];
            for (v, c) in colors {
                let slot = colours
                    .get_mut(v)
                    .with_context(|| format!("vertex {v} out of range"))?;
                if slot.replace(c).is_some() {
                    bail!("vertex {v} coloured twice");
                }
            }
            let colours = colours
                .into_iter()
                .enumerate()
                .map(|(v, c)| c.with_context(|| format!("vertex {v} has no colour")))
                .collect::<Result<Vec<_>>>()?;
            Ok(Colouring::Vertex(VertexColouring {
                colours,
                certificate,
                bound,
            }))
        }
    }
}

/// Two edge sets given as vertex pairs, e.g. the record written by
/// `generate --model oplus --json`.
#[derive(Debug, Deserialize)]
pub struct SplitFile {
    pub edges1: Vec<(Vertex, Vertex)>,
    pub edges2: Vec<(Vertex, Vertex)>,
}

pub fn read_graph(path: &Path) -> Result<Graph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_edge_list(&text).with_context(|| format!("parsing {}", path.display()))
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

/// Writes to `path`, or to stdout when there is none.
pub fn emit(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

pub fn emit_json<T: Serialize>(path: Option<&Path>, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    emit(path, &text)
}
