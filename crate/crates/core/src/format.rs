//! Plain-text interchange formats.
//!
//! Edge list:
//! ```text
//! # comment
//! p 4 3
//! 0 1
//! 1 2
//! 2 3
//! ```
//! The `p <n> <m>` header is optional; without it `n` is one more than the
//! largest id mentioned. Output always carries the header and lists edges
//! sorted by `(min id, max id)`.
//!
//! Decomposition:
//! ```text
//! paths 2 bound 1 met false
//! 0 1 2
//! 2 0
//! ```
//! One path per line, vertices in traversal order.

use std::fmt::Write as _;

use crate::decompose::Decomposition;
use crate::error::ParseError;
use crate::graph::{Graph, Path, VertexId};

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_id(line: usize, tok: &str) -> Result<usize, ParseError> {
    tok.parse::<usize>().map_err(|_| {
        ParseError::new(
            line,
            format!("expected a non-negative integer, got {tok:?}"),
        )
    })
}

pub fn parse_edge_list(text: &str) -> Result<Graph, ParseError> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges: Vec<(VertexId, VertexId)> = Vec::new();
    let mut lines: Vec<usize> = Vec::new();
    for (line, l) in content_lines(text) {
        let toks: Vec<&str> = l.split_whitespace().collect();
        if toks[0] == "p" {
            if header.is_some() || !edges.is_empty() {
                return Err(ParseError::new(
                    line,
                    "header must precede all edges and appear once",
                ));
            }
            if toks.len() != 3 {
                return Err(ParseError::new(line, "header must read `p <n> <m>`"));
            }
            header = Some((parse_id(line, toks[1])?, parse_id(line, toks[2])?));
            continue;
        }
        if toks.len() != 2 {
            return Err(ParseError::new(line, "edge lines must read `<u> <v>`"));
        }
        edges.push((parse_id(line, toks[0])?, parse_id(line, toks[1])?));
        lines.push(line);
    }
    let n = match header {
        Some((n, m)) => {
            if m != edges.len() {
                return Err(ParseError::new(
                    lines.first().copied().unwrap_or(0),
                    format!("header announces {m} edges, found {}", edges.len()),
                ));
            }
            n
        }
        None => edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0),
    };
    // Add edges one at a time so a bad pair is reported at its own line.
    let mut seen = std::collections::BTreeSet::new();
    for (&(u, v), &line) in edges.iter().zip(&lines) {
        let single = Graph::from_edges(n, [(u, v)]);
        if let Err(e) = single {
            return Err(ParseError::new(line, e.to_string()));
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(ParseError::new(line, format!("duplicate edge ({u}, {v})")));
        }
    }
    Graph::from_edges(n, edges).map_err(|e| ParseError::new(0, e.to_string()))
}

pub fn write_edge_list(g: &Graph) -> String {
    let mut out = format!("p {} {}\n", g.n(), g.m());
    for e in g.edges() {
        let _ = writeln!(out, "{} {}", e.lo(), e.hi());
    }
    out
}

pub fn write_decomposition(d: &Decomposition) -> String {
    let mut out = format!(
        "paths {} bound {} met {}\n",
        d.paths.len(),
        d.claimed_bound,
        d.bound_met
    );
    for p in &d.paths {
        let line: Vec<String> = p.vertices().iter().map(|v| v.to_string()).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

/// Reads a decomposition certificate. Paths are checked for repeated
/// vertices only; whether their edges exist is the verifier's business.
pub fn parse_decomposition(text: &str) -> Result<Decomposition, ParseError> {
    let mut lines = content_lines(text);
    let (hline, header) = lines
        .next()
        .ok_or_else(|| ParseError::new(1, "missing `paths <k> bound <b> met <bool>` header"))?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    if toks.len() != 6 || toks[0] != "paths" || toks[2] != "bound" || toks[4] != "met" {
        return Err(ParseError::new(
            hline,
            "header must read `paths <k> bound <b> met <bool>`",
        ));
    }
    let count = parse_id(hline, toks[1])?;
    let claimed_bound = parse_id(hline, toks[3])?;
    let bound_met = match toks[5] {
        "true" => true,
        "false" => false,
        other => {
            return Err(ParseError::new(
                hline,
                format!("expected true or false, got {other:?}"),
            ))
        }
    };
    let mut paths = Vec::new();
    for (line, l) in lines {
        let vertices = l
            .split_whitespace()
            .map(|t| parse_id(line, t))
            .collect::<Result<Vec<_>, _>>()?;
        // A repeated vertex is reported by the verifier as NotAPath, so keep
        // the raw sequence here.
        paths.push(Path::unchecked(vertices));
    }
    if paths.len() != count {
        return Err(ParseError::new(
            hline,
            format!("header announces {count} paths, found {}", paths.len()),
        ));
    }
    Ok(Decomposition {
        paths,
        claimed_bound,
        bound_met,
    })
}
