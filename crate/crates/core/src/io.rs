//! Plain-text graph files.
//!
//! ```text
//! # comment
//! digraph 4
//! e1 2 1
//! e2 1 2
//! ```
//!
//! The header is `digraph n` or `multigraph n`, followed by one
//! `edge-id u v` line per edge. Edge ids and vertex names are arbitrary
//! tokens. When every vertex name is an integer, vertices are ordered
//! numerically and the range is filled up to `n` (starting at 0 if 0 is used,
//! otherwise at 1); otherwise vertices are numbered by first appearance and
//! any remaining vertices up to `n` are isolated.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::graph::{Digraph, Labels, Multigraph};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphKind {
    Digraph,
    Multigraph,
}

/// A parsed graph file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParsedGraph {
    Digraph(Digraph, Labels),
    Multigraph(Multigraph, Labels),
}

impl ParsedGraph {
    pub fn labels(&self) -> &Labels {
        match self {
            ParsedGraph::Digraph(_, l) | ParsedGraph::Multigraph(_, l) => l,
        }
    }

    pub fn kind(&self) -> GraphKind {
        match self {
            ParsedGraph::Digraph(..) => GraphKind::Digraph,
            ParsedGraph::Multigraph(..) => GraphKind::Multigraph,
        }
    }

    pub fn vertex_count(&self) -> usize {
        match self {
            ParsedGraph::Digraph(d, _) => d.vertex_count(),
            ParsedGraph::Multigraph(x, _) => x.vertex_count(),
        }
    }

    pub fn edge_count(&self) -> usize {
        match self {
            ParsedGraph::Digraph(d, _) => d.edge_count(),
            ParsedGraph::Multigraph(x, _) => x.edge_count(),
        }
    }
}

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

pub fn parse_graph(text: &str) -> Result<ParsedGraph> {
    let mut header: Option<(GraphKind, usize, usize)> = None;
    let mut rows: Vec<(usize, String, String, String)> = Vec::new();
    let mut last_line = 0;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        last_line = line;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let toks: Vec<&str> = content.split_whitespace().collect();
        match header {
            None => {
                let kind = match toks[0] {
                    "digraph" => GraphKind::Digraph,
                    "multigraph" => GraphKind::Multigraph,
                    other => {
                        return Err(perr(line, format!("expected `digraph n` or `multigraph n`, found `{other}`")))
                    }
                };
                if toks.len() != 2 {
                    return Err(perr(line, "header takes exactly one vertex count"));
                }
                let n =
                    toks[1].parse::<usize>().map_err(|_| perr(line, format!("invalid vertex count `{}`", toks[1])))?;
                header = Some((kind, n, line));
            }
            Some(_) => {
                if toks.len() != 3 {
                    return Err(perr(line, format!("expected `edge-id u v`, found {} tokens", toks.len())));
                }
                rows.push((line, toks[0].into(), toks[1].into(), toks[2].into()));
            }
        }
    }
    let Some((kind, n, header_line)) = header else {
        return Err(perr(last_line.max(1), "empty file: missing header"));
    };

    let mut seen_edges = HashMap::new();
    for (line, id, u, v) in &rows {
        if let Some(prev) = seen_edges.insert(id.clone(), *line) {
            return Err(perr(*line, format!("duplicate edge id `{id}` (first defined on line {prev})")));
        }
        if u == v {
            return Err(perr(*line, format!("edge `{id}` is a loop at vertex `{u}`")));
        }
    }

    let vertices = vertex_labels(&rows, n).map_err(|msg| perr(header_line, msg))?;
    let index: HashMap<&str, usize> = vertices.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
    let pairs: Vec<(usize, usize)> = rows.iter().map(|(_, _, u, v)| (index[u.as_str()], index[v.as_str()])).collect();
    let labels = Labels { vertices, edges: rows.iter().map(|r| r.1.clone()).collect() };
    let wrap = |e: Error| match e {
        Error::Loop { edge, .. } => perr(rows[edge].0, e.to_string()),
        other => perr(header_line, other.to_string()),
    };
    Ok(match kind {
        GraphKind::Digraph => ParsedGraph::Digraph(Digraph::new(n, pairs).map_err(wrap)?, labels),
        GraphKind::Multigraph => ParsedGraph::Multigraph(Multigraph::new(n, pairs).map_err(wrap)?, labels),
    })
}

fn vertex_labels(rows: &[(usize, String, String, String)], n: usize) -> std::result::Result<Vec<String>, String> {
    let mut order: Vec<String> = Vec::new();
    for (_, _, u, v) in rows {
        for w in [u, v] {
            if !order.contains(w) {
                order.push(w.clone());
            }
        }
    }
    if order.len() > n {
        return Err(format!("header declares {n} vertices but edges use {}", order.len()));
    }
    let numeric: Option<BTreeSet<i64>> = order.iter().map(|s| s.parse::<i64>().ok()).collect();
    if let Some(nums) = numeric {
        let start = if nums.first() == Some(&0) { 0 } else { 1 };
        if nums.iter().all(|&k| k >= start && k < start + n as i64) {
            return Ok((start..start + n as i64).map(|k| k.to_string()).collect());
        }
        let mut out: Vec<String> = nums.iter().map(|k| k.to_string()).collect();
        pad(&mut out, n);
        return Ok(out);
    }
    pad(&mut order, n);
    Ok(order)
}

fn pad(labels: &mut Vec<String>, n: usize) {
    let mut k = 0;
    while labels.len() < n {
        let name = format!("_{k}");
        if !labels.contains(&name) {
            labels.push(name);
        }
        k += 1;
    }
}

pub fn parse_graph_file(path: impl AsRef<Path>) -> Result<ParsedGraph> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| perr(0, format!("cannot read {}: {e}", path.display())))?;
    parse_graph(&text)
}

/// Render a digraph in the text format.
pub fn write_digraph(d: &Digraph, labels: &Labels) -> String {
    let mut s = format!("digraph {}\n", d.vertex_count());
    for (e, &(u, v)) in d.arcs().iter().enumerate() {
        let _ = writeln!(s, "{} {} {}", labels.edge(e), labels.vertex(u), labels.vertex(v));
    }
    s
}

/// Render a multigraph in the text format.
pub fn write_multigraph(x: &Multigraph, labels: &Labels) -> String {
    let mut s = format!("multigraph {}\n", x.vertex_count());
    for (e, &(u, v)) in x.edges().iter().enumerate() {
        let _ = writeln!(s, "{} {} {}", labels.edge(e), labels.vertex(u), labels.vertex(v));
    }
    s
}

/// The running example digraph on vertices 1..4 with edges e1..h2.
pub const RUNNING_EXAMPLE: &str = include_str!("../data/running_example.digraph");

/// Parse [`RUNNING_EXAMPLE`].
pub fn running_example() -> (Digraph, Labels) {
    match parse_graph(RUNNING_EXAMPLE).expect("bundled example parses") {
        ParsedGraph::Digraph(d, l) => (d, l),
        ParsedGraph::Multigraph(..) => unreachable!("bundled example is a digraph"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn running_example_shape() {
        let (d, l) = running_example();
        assert_eq!(d.vertex_count(), 4);
        assert_eq!(d.edge_count(), 8);
        assert_eq!(l.vertices, vec!["1", "2", "3", "4"]);
        let v3 = l.vertex_id("3").unwrap();
        assert_eq!(d.out_degree(v3), Ok(3));
        assert!(d.is_eulerian());
    }

    #[test]
    fn empty_and_comment_only_files_fail() {
        assert!(matches!(parse_graph(""), Err(Error::Parse { .. })));
        assert!(matches!(parse_graph("# nothing\n\n"), Err(Error::Parse { .. })));
    }

    #[test]
    fn loop_is_rejected_with_line() {
        let err = parse_graph("digraph 2\na 1 2\ne 1 1\n").unwrap_err();
        assert_eq!(err, Error::Parse { line: 3, msg: "edge `e` is a loop at vertex `1`".into() });
    }

    #[test]
    fn duplicate_edge_id() {
        let err = parse_graph("multigraph 2\na 1 2\na 2 1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }));
    }

    #[test]
    fn named_vertices_and_padding() {
        let g = parse_graph("digraph 3\nx u v\ny v u\n").unwrap();
        assert_eq!(g.labels().vertices, vec!["u", "v", "_0"]);
        let g = parse_graph("digraph 3 # trailing comment\n\nx 0 1\ny 1 0\n").unwrap();
        assert_eq!(g.labels().vertices, vec!["0", "1", "2"]);
    }

    #[test]
    fn too_many_vertices() {
        assert!(parse_graph("digraph 1\na 1 2\n").is_err());
    }

    #[test]
    fn round_trip() {
        let (d, l) = running_example();
        let text = write_digraph(&d, &l);
        assert_eq!(parse_graph(&text).unwrap(), ParsedGraph::Digraph(d, l));
    }
}
