//! Plain-text graph and colouring files.
//!
//! ```text
//! # optional comment lines
//! graph <n> <m>
//! <u> <v>          (m lines, 0-based vertices)
//! ```
//!
//! ```text
//! colouring <m> <c>
//! <edge-index> <colour>   (m lines, colours 1..=c)
//! ```

use std::collections::HashSet;
use std::fmt::Write as _;

use thiserror::Error;

use crate::colouring::EdgeColouring;
use crate::error::GraphError;
use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        message: message.into(),
    }
}

/// Non-blank, non-comment lines with 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_fields<const N: usize>(line: usize, text: &str) -> Result<[usize; N], ParseError> {
    let fields: Vec<&str> = text.split_whitespace().collect();
    if fields.len() != N {
        return Err(err(line, format!("expected {N} fields, found {}", fields.len())));
    }
    let mut out = [0usize; N];
    for (slot, field) in out.iter_mut().zip(&fields) {
        *slot = field
            .parse()
            .map_err(|_| err(line, format!("not a non-negative integer: {field:?}")))?;
    }
    Ok(out)
}

fn parse_header(line: usize, text: &str, keyword: &str) -> Result<(usize, usize), ParseError> {
    let rest = text
        .strip_prefix(keyword)
        .filter(|r| r.starts_with(char::is_whitespace))
        .ok_or_else(|| err(line, format!("expected header `{keyword} <a> <b>`")))?;
    let [a, b] = parse_fields::<2>(line, rest)?;
    Ok((a, b))
}

pub fn parse_graph(text: &str) -> Result<Graph, ParseError> {
    let mut lines = content_lines(text);
    let (hline, header) = lines.next().ok_or_else(|| err(1, "missing `graph` header"))?;
    let (n, m) = parse_header(hline, header, "graph")?;
    let mut pairs = Vec::with_capacity(m);
    let mut seen = HashSet::with_capacity(m);
    let mut last_line = hline;
    for (line, body) in lines {
        if pairs.len() == m {
            return Err(err(line, format!("more than the declared {m} edges")));
        }
        let [u, v] = parse_fields::<2>(line, body)?;
        if u >= n || v >= n {
            return Err(err(line, GraphError::OutOfRange { u, v, vertex_count: n }.to_string()));
        }
        if u == v {
            return Err(err(line, GraphError::SelfLoop(u).to_string()));
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(err(line, GraphError::DuplicateEdge(u, v).to_string()));
        }
        pairs.push((u, v));
        last_line = line;
    }
    if pairs.len() != m {
        return Err(err(
            last_line,
            format!("declared {m} edges, found {}", pairs.len()),
        ));
    }
    Graph::new(n, &pairs).map_err(|e| err(last_line, e.to_string()))
}

pub fn write_graph(g: &Graph) -> String {
    let mut out = format!("graph {} {}\n", g.vertex_count(), g.edge_count());
    for &(u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

pub fn parse_colouring(text: &str) -> Result<EdgeColouring, ParseError> {
    let mut lines = content_lines(text);
    let (hline, header) = lines.next().ok_or_else(|| err(1, "missing `colouring` header"))?;
    let (m, c) = parse_header(hline, header, "colouring")?;
    if c == 0 || c > u32::MAX as usize {
        return Err(err(hline, format!("colour count {c} out of range")));
    }
    let mut colours: Vec<Option<u32>> = vec![None; m];
    let mut seen = 0usize;
    let mut last_line = hline;
    for (line, body) in lines {
        let [e, colour] = parse_fields::<2>(line, body)?;
        if e >= m {
            return Err(err(line, format!("edge index {e} out of range for {m} edges")));
        }
        if colour == 0 || colour > c {
            return Err(err(line, format!("colour {colour} outside 1..={c}")));
        }
        if colours[e].replace(colour as u32).is_some() {
            return Err(err(line, format!("edge {e} coloured twice")));
        }
        seen += 1;
        last_line = line;
    }
    if seen != m {
        return Err(err(last_line, format!("declared {m} edges, found {seen}")));
    }
    let colours = colours.into_iter().map(Option::unwrap).collect();
    EdgeColouring::new(colours, c as u32).map_err(|e| err(hline, e.to_string()))
}

pub fn write_colouring(c: &EdgeColouring) -> String {
    let mut out = format!("colouring {} {}\n", c.len(), c.colour_count());
    for (e, colour) in c.colours().iter().enumerate() {
        writeln!(out, "{e} {colour}").unwrap();
    }
    out
}
