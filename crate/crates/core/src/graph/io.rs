//! Edge-list text format and DOT export.
//!
//! The edge list is a header line `n m` followed by `m` lines `u v` with
//! 0-based vertex ids. Blank lines and lines starting with `#` are skipped.

use std::fmt::Write as _;

use super::Graph;
use crate::error::{Error, Result};

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (header_line, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        msg: "missing `n m` header".into(),
    })?;
    let (n, m) = parse_pair(header_line, header)?;

    let mut edges = Vec::with_capacity(m);
    for (line, l) in lines {
        edges.push(parse_pair(line, l)?);
    }
    if edges.len() != m {
        return Err(Error::Parse {
            line: header_line,
            msg: format!("header announces {m} edges, found {}", edges.len()),
        });
    }
    Graph::new(n, &edges)
}

fn parse_pair(line: usize, text: &str) -> Result<(usize, usize)> {
    let mut it = text.split_whitespace().map(str::parse::<usize>);
    match (it.next(), it.next(), it.next()) {
        (Some(Ok(a)), Some(Ok(b)), None) => Ok((a, b)),
        _ => Err(Error::Parse {
            line,
            msg: format!("expected two non-negative integers, got `{text}`"),
        }),
    }
}

pub fn write_edge_list(g: &Graph) -> String {
    let mut out = String::with_capacity(8 * g.m() + 16);
    let _ = writeln!(out, "{} {}", g.n(), g.m());
    for &(u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

/// Graphviz rendering; `edge_label(i)` may attach a label (e.g. a colour) to
/// edge `i`.
pub fn to_dot(g: &Graph, edge_label: impl Fn(usize) -> Option<String>) -> String {
    to_dot_labelled(g, |_| None, edge_label)
}

/// [`to_dot`] with optional vertex labels as well.
pub fn to_dot_labelled(
    g: &Graph,
    vertex_label: impl Fn(usize) -> Option<String>,
    edge_label: impl Fn(usize) -> Option<String>,
) -> String {
    let mut out = String::from("graph G {\n");
    for v in 0..g.n() {
        match vertex_label(v) {
            Some(label) => {
                let _ = writeln!(out, "  {v} [label=\"{v}:{label}\"];");
            }
            None => {
                let _ = writeln!(out, "  {v};");
            }
        }
    }
    for (i, &(u, v)) in g.edges().iter().enumerate() {
        match edge_label(i) {
            Some(label) => {
                let _ = writeln!(out, "  {u} -- {v} [label=\"{label}\"];");
            }
            None => {
                let _ = writeln!(out, "  {u} -- {v};");
            }
        }
    }
    out.push_str("}\n");
    out
}
