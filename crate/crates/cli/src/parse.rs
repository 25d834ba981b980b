//! Input file formats.
//!
//! Graph files: a header line `k m`, then `m` lines `u v` with 0-based
//! endpoints. Metric files: `k` lines of `k` comma-separated rationals
//! (`p/q` or integers). In both, `#` starts a comment and blank lines are
//! skipped.

use std::fs;
use std::path::Path;

use blowup_core::euclid::SquaredDistanceMatrix;
use blowup_core::metric::validate_metric;
use blowup_core::rational::parse_rational;
use blowup_core::{Error, Graph, MetricSpace, RationalMatrix};

use crate::CliError;

/// Non-empty lines with comments stripped, paired with 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let body = line.split('#').next().unwrap_or("").trim();
        (!body.is_empty()).then_some((i + 1, body))
    })
}

fn at_line(line: usize, msg: impl std::fmt::Display) -> Error {
    Error::Parse(format!("line {line}: {msg}"))
}

fn parse_count(line: usize, tok: &str, what: &str) -> Result<usize, Error> {
    tok.parse::<usize>()
        .map_err(|_| at_line(line, format!("expected {what}, found {tok:?}")))
}

pub fn parse_graph(text: &str) -> Result<Graph, Error> {
    let mut lines = content_lines(text);
    let (hline, header) = lines
        .next()
        .ok_or_else(|| Error::Parse("empty graph file".into()))?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    if toks.len() != 2 {
        return Err(at_line(hline, "header must be \"k m\""));
    }
    let k = parse_count(hline, toks[0], "vertex count")?;
    let m = parse_count(hline, toks[1], "edge count")?;
    let mut edges = Vec::with_capacity(m);
    let mut last = hline;
    for (line, body) in lines {
        let toks: Vec<&str> = body.split_whitespace().collect();
        if toks.len() != 2 {
            return Err(at_line(line, "edge line must be \"u v\""));
        }
        let u = parse_count(line, toks[0], "vertex")?;
        let v = parse_count(line, toks[1], "vertex")?;
        if u >= k || v >= k {
            return Err(at_line(line, format!("vertex out of range 0..{k}")));
        }
        if edges.len() == m {
            return Err(at_line(line, format!("more than the {m} declared edges")));
        }
        edges.push((u, v));
        last = line;
    }
    if edges.len() < m {
        return Err(at_line(last, format!("expected {m} edges, found {}", edges.len())));
    }
    Graph::new(k, &edges)
}

pub fn parse_matrix(text: &str) -> Result<RationalMatrix, Error> {
    let mut rows = Vec::new();
    for (line, body) in content_lines(text) {
        let row = body
            .split(',')
            .map(|t| parse_rational(t).map_err(|e| at_line(line, e)))
            .collect::<Result<Vec<_>, _>>()?;
        if let Some(first) = rows.first().map(Vec::len) {
            if row.len() != first {
                return Err(at_line(line, format!("expected {first} entries, found {}", row.len())));
            }
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(Error::Parse("empty matrix file".into()));
    }
    RationalMatrix::from_rows(rows)
}

pub fn parse_metric(text: &str) -> Result<MetricSpace, Error> {
    validate_metric(&parse_matrix(text)?)
}

pub fn parse_squared(text: &str) -> Result<SquaredDistanceMatrix, Error> {
    SquaredDistanceMatrix::new(parse_matrix(text)?)
}

pub(crate) fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

pub fn parse_graph_file(path: &Path) -> Result<Graph, CliError> {
    Ok(parse_graph(&read(path)?)?)
}

pub fn parse_metric_file(path: &Path) -> Result<MetricSpace, CliError> {
    Ok(parse_metric(&read(path)?)?)
}

pub fn parse_squared_file(path: &Path) -> Result<SquaredDistanceMatrix, CliError> {
    Ok(parse_squared(&read(path)?)?)
}
