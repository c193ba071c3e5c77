//! Text formats: the `n m` edge list and graph6.
//!
//! Edge list: first significant line is `n m`, followed by `m` lines `u v`.
//! Blank lines and lines starting with `#` are skipped. Line numbers in
//! errors are 1-based and count every physical line.

use std::fmt::Write as _;

use thiserror::Error;

use super::{Graph, GraphError};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("empty input: missing header line")]
    MissingHeader,
    #[error("line {line}: malformed header {text:?} (expected \"n m\")")]
    Header { line: usize, text: String },
    #[error("line {line}: malformed edge {text:?} (expected \"u v\")")]
    EdgeLine { line: usize, text: String },
    #[error("line {line}: {source}")]
    Edge {
        line: usize,
        #[source]
        source: GraphError,
    },
    #[error("header announces {expected} edges but {found} were listed")]
    EdgeCount { expected: usize, found: usize },
    #[error("graph6: {0}")]
    Graph6(String),
}

fn significant_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn two_numbers(text: &str) -> Option<(usize, usize)> {
    let mut it = text.split_whitespace();
    let a = it.next()?.parse().ok()?;
    let b = it.next()?.parse().ok()?;
    it.next().is_none().then_some((a, b))
}

pub fn parse_edge_list(text: &str) -> Result<Graph, ParseError> {
    let mut lines = significant_lines(text);
    let (hline, header) = lines.next().ok_or(ParseError::MissingHeader)?;
    let (n, m) = two_numbers(header).ok_or_else(|| ParseError::Header { line: hline, text: header.to_string() })?;
    let mut g = Graph::empty(n);
    let mut found = 0;
    for (line, l) in lines {
        let (u, v) = two_numbers(l).ok_or_else(|| ParseError::EdgeLine { line, text: l.to_string() })?;
        g.insert_edge(u, v).map_err(|source| ParseError::Edge { line, source })?;
        found += 1;
    }
    if found != m {
        return Err(ParseError::EdgeCount { expected: m, found });
    }
    Ok(g)
}

/// Canonical edge-list rendering; parses back to the same graph.
pub fn write_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.order(), g.size());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

const GRAPH6_HEADER: &str = ">>graph6<<";

pub fn parse_graph6(text: &str) -> Result<Graph, ParseError> {
    let s = text.trim();
    let s = s.strip_prefix(GRAPH6_HEADER).unwrap_or(s);
    let bytes = s.as_bytes();
    if bytes.is_empty() {
        return Err(ParseError::Graph6("empty string".into()));
    }
    if let Some(&b) = bytes.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(ParseError::Graph6(format!("byte {b} outside 63..=126")));
    }
    let data: Vec<u32> = bytes.iter().map(|&b| u32::from(b - 63)).collect();
    let (n, body) = match data.as_slice() {
        [63, 63, rest @ ..] => {
            if rest.len() < 6 {
                return Err(ParseError::Graph6("truncated 36-bit order".into()));
            }
            let n = rest[..6].iter().fold(0usize, |acc, &c| (acc << 6) | c as usize);
            (n, &rest[6..])
        }
        [63, rest @ ..] => {
            if rest.len() < 3 {
                return Err(ParseError::Graph6("truncated 18-bit order".into()));
            }
            let n = rest[..3].iter().fold(0usize, |acc, &c| (acc << 6) | c as usize);
            (n, &rest[3..])
        }
        [n, rest @ ..] => (*n as usize, rest),
        [] => unreachable!(),
    };
    let bits = n * n.saturating_sub(1) / 2;
    let needed = bits.div_ceil(6);
    if body.len() != needed {
        return Err(ParseError::Graph6(format!(
            "expected {needed} adjacency bytes for n={n}, found {}",
            body.len()
        )));
    }
    let mut g = Graph::empty(n);
    let mut k = 0;
    for v in 1..n {
        for u in 0..v {
            if body[k / 6] >> (5 - k % 6) & 1 == 1 {
                g.insert_edge(u, v).map_err(|e| ParseError::Graph6(e.to_string()))?;
            }
            k += 1;
        }
    }
    Ok(g)
}

pub fn write_graph6(g: &Graph) -> String {
    let n = g.order();
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        out.extend((0..3).rev().map(|i| ((n >> (6 * i)) & 63) as u8 + 63));
    } else {
        out.extend([126, 126]);
        out.extend((0..6).rev().map(|i| ((n >> (6 * i)) & 63) as u8 + 63));
    }
    let mut acc = 0u8;
    let mut k = 0;
    for v in 1..n {
        for u in 0..v {
            acc = (acc << 1) | u8::from(g.has_edge(u, v));
            k += 1;
            if k == 6 {
                out.push(acc + 63);
                acc = 0;
                k = 0;
            }
        }
    }
    if k > 0 {
        out.push((acc << (6 - k)) + 63);
    }
    String::from_utf8(out).expect("graph6 bytes are ASCII")
}

/// Detects the format from the first significant line: two integers mean an
/// edge list, anything else is taken as graph6 (graph6 never contains digits).
pub fn parse_auto(text: &str) -> Result<Graph, ParseError> {
    match significant_lines(text).next() {
        None => Err(ParseError::MissingHeader),
        Some((_, first)) if first.split_whitespace().count() == 2 || first.chars().any(|c| c.is_ascii_digit()) => {
            parse_edge_list(text)
        }
        Some((_, first)) => parse_graph6(first),
    }
}
