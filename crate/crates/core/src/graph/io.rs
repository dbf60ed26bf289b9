//! Plain-text edge lists: a header line `n m`, then one `u v` line per edge
//! with `u < v`, sorted lexicographically.

use std::fmt::Write as _;
use std::io::{self, Write};

use super::{Graph, GraphError};

pub fn to_edge_list(g: &Graph) -> String {
    let mut out = String::with_capacity(16 * (g.m() + 1));
    let _ = writeln!(out, "{} {}", g.n(), g.m());
    for e in g.edges() {
        let _ = writeln!(out, "{} {}", e.lo(), e.hi());
    }
    out
}

pub fn write_edge_list<W: Write>(g: &Graph, mut w: W) -> io::Result<()> {
    w.write_all(to_edge_list(g).as_bytes())
}

/// Parses the edge-list format. Blank lines are ignored; edges may appear in
/// any order or orientation, but the declared count must match.
pub fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());
    let (line, header) = lines.next().ok_or(GraphError::Parse {
        line: 1,
        reason: "missing `n m` header".into(),
    })?;
    let (n, m) = parse_pair(line, header)?;
    let mut edges = Vec::with_capacity(m);
    for (line, l) in lines {
        edges.push(parse_pair(line, l)?);
    }
    if edges.len() != m {
        return Err(GraphError::Parse {
            line,
            reason: format!("header declares {m} edges, found {}", edges.len()),
        });
    }
    Graph::from_edges(n, edges)
}

fn parse_pair(line: usize, l: &str) -> Result<(usize, usize), GraphError> {
    let bad = |reason: String| GraphError::Parse { line, reason };
    let mut it = l.split_whitespace();
    let mut next = || -> Result<usize, GraphError> {
        let tok = it.next().ok_or_else(|| bad("expected two integers".into()))?;
        tok.parse().map_err(|_| bad(format!("not an integer: `{tok}`")))
    };
    let pair = (next()?, next()?);
    if it.next().is_some() {
        return Err(bad("trailing tokens".into()));
    }
    Ok(pair)
}
