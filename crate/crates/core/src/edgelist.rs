//! Plain-text edge lists.
//!
//! ```text
//! # comment lines start with '#'
//! n m
//! u v
//! ...
//! ```
//!
//! The header gives the vertex count and the declared edge count. A wrong
//! `m` is not fatal: the actual count is used and a warning is returned.

use std::fs;
use std::io::{self, Write};
use std::path::Path;

use thiserror::Error;

use crate::graph::{Graph, GraphError, VertexId};

#[derive(Debug, Error)]
pub enum EdgeListError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: self-loop on vertex {vertex}")]
    SelfLoop { line: usize, vertex: VertexId },
    #[error("line {line}: vertex {vertex} out of range (n = {n})")]
    OutOfRange {
        line: usize,
        vertex: VertexId,
        n: usize,
    },
    #[error("missing `n m` header line")]
    MissingHeader,
    #[error(transparent)]
    Io(#[from] io::Error),
}

#[derive(Debug)]
pub struct ParsedEdgeList {
    pub graph: Graph,
    pub warnings: Vec<String>,
}

fn parse_pair(line: usize, text: &str) -> Result<(usize, usize), EdgeListError> {
    let mut it = text.split_whitespace();
    let mut next = || -> Result<usize, EdgeListError> {
        let tok = it.next().ok_or_else(|| EdgeListError::Syntax {
            line,
            message: format!("expected two integers, got {text:?}"),
        })?;
        tok.parse().map_err(|_| EdgeListError::Syntax {
            line,
            message: format!("{tok:?} is not a non-negative integer"),
        })
    };
    let pair = (next()?, next()?);
    if it.next().is_some() {
        return Err(EdgeListError::Syntax {
            line,
            message: format!("trailing tokens in {text:?}"),
        });
    }
    Ok(pair)
}

pub fn parse_edge_list(text: &str) -> Result<ParsedEdgeList, EdgeListError> {
    let mut header = None;
    let mut pairs = Vec::new();
    let mut lines = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let t = raw.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let pair = parse_pair(line, t)?;
        if header.is_none() {
            header = Some(pair);
        } else {
            pairs.push(pair);
            lines.push(line);
        }
    }
    let (n, declared) = header.ok_or(EdgeListError::MissingHeader)?;
    let graph = Graph::from_edge_list(n, &pairs).map_err(|e| match e {
        GraphError::SelfLoop { index, vertex } => EdgeListError::SelfLoop {
            line: lines[index],
            vertex,
        },
        GraphError::EdgeOutOfRange { index, vertex, n } => EdgeListError::OutOfRange {
            line: lines[index],
            vertex,
            n,
        },
        other => EdgeListError::Syntax {
            line: 0,
            message: other.to_string(),
        },
    })?;
    let mut warnings = Vec::new();
    if graph.edge_count() != declared {
        let msg = format!(
            "header declares {declared} edges but {} distinct edges were read; using {}",
            graph.edge_count(),
            graph.edge_count()
        );
        log::warn!("{msg}");
        warnings.push(msg);
    }
    Ok(ParsedEdgeList { graph, warnings })
}

pub fn read_edge_list(path: impl AsRef<Path>) -> Result<ParsedEdgeList, EdgeListError> {
    parse_edge_list(&fs::read_to_string(path)?)
}

/// Canonical form: header, then each edge once as `u v` with `u < v`, sorted.
pub fn write_edge_list_to<W: Write>(g: &Graph, mut w: W) -> io::Result<()> {
    writeln!(w, "{} {}", g.vertex_count(), g.edge_count())?;
    for (u, v) in g.edges() {
        writeln!(w, "{u} {v}")?;
    }
    w.flush()
}

pub fn format_edge_list(g: &Graph) -> String {
    let mut buf = Vec::new();
    write_edge_list_to(g, &mut buf).expect("writing to a Vec cannot fail");
    String::from_utf8(buf).expect("edge list is ASCII")
}

pub fn write_edge_list(g: &Graph, path: impl AsRef<Path>) -> io::Result<()> {
    fs::write(path, format_edge_list(g))
}
