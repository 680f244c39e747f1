//! Plain-text edge lists: a header line `n m`, then `m` lines `u v` with
//! 0-based endpoints. Loops are written `u u` and parallel edges repeat.
//! Blank lines and lines starting with `#` are skipped.

use std::fmt::Write as _;
use std::path::Path;

use nbspec_core::MultiGraph;

use crate::error::{Error, Result};

fn parse_pair(line: usize, text: &str, what: &str) -> Result<(usize, usize)> {
    let mut fields = text.split_whitespace();
    let mut next = |name: &str| -> Result<usize> {
        let token = fields
            .next()
            .ok_or_else(|| Error::Parse { line, message: format!("missing {name} in {what}") })?;
        token
            .parse()
            .map_err(|_| Error::Parse { line, message: format!("{name} `{token}` is not a non-negative integer") })
    };
    let pair = (next("first field")?, next("second field")?);
    if let Some(extra) = fields.next() {
        return Err(Error::Parse { line, message: format!("unexpected trailing field `{extra}` in {what}") });
    }
    Ok(pair)
}

pub fn parse_graph(text: &str) -> Result<MultiGraph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (header_line, header) = lines.next().ok_or(Error::Parse { line: 1, message: "empty graph file".into() })?;
    let (n, m) = parse_pair(header_line, header, "header `n m`")?;

    let mut edges = Vec::with_capacity(m);
    let mut last_line = header_line;
    for (line, text) in lines {
        if edges.len() == m {
            return Err(Error::Parse { line, message: format!("header announces {m} edges but more follow") });
        }
        let (u, v) = parse_pair(line, text, "edge `u v`")?;
        if let Some(bad) = [u, v].into_iter().find(|&x| x >= n) {
            return Err(Error::Parse { line, message: format!("vertex {bad} out of range for {n} vertices") });
        }
        edges.push((u, v));
        last_line = line;
    }
    if edges.len() != m {
        return Err(Error::Parse {
            line: last_line,
            message: format!("header announces {m} edges, file has {}", edges.len()),
        });
    }
    Ok(MultiGraph::from_edges(n, &edges)?)
}

pub fn read_graph_file(path: &Path) -> Result<(MultiGraph, Vec<u8>)> {
    let bytes = std::fs::read(path).map_err(|source| Error::Read { path: path.to_owned(), source })?;
    let text = std::str::from_utf8(&bytes).map_err(|_| Error::Input(format!("{}: not UTF-8 text", path.display())))?;
    let g = parse_graph(text).map_err(|e| match e {
        Error::Parse { line, message } => Error::Input(format!("{}:{line}: {message}", path.display())),
        other => other,
    })?;
    Ok((g, bytes))
}

/// Edges in insertion order, so `parse_graph(&write_graph(g)) == g`.
pub fn write_graph(g: &MultiGraph) -> String {
    let mut out = format!("{} {}\n", g.n_vertices(), g.n_edges());
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}
