//! Edge-list files: a header `G n m bipartition_size`, then one `u v` line
//! per edge (0-based, `u < v`). `#` lines are comments.

use std::fmt::Write as _;

use super::graph::Graph;
use crate::error::{Error, Result};

/// `bipartition_size` is the number of point-side vertices, or 0 for a
/// graph with no distinguished side.
pub fn write_edge_list(g: &Graph, bipartition_size: usize) -> String {
    let mut out = String::new();
    writeln!(out, "G {} {} {}", g.n(), g.num_edges(), bipartition_size).unwrap();
    for (u, w) in g.edges() {
        writeln!(out, "{u} {w}").unwrap();
    }
    out
}

pub fn parse_edge_list(text: &str) -> Result<(Graph, usize)> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (hl, header) = lines.next().ok_or_else(|| Error::parse(0, "empty file"))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    let ["G", n, m, part] = fields[..] else {
        return Err(Error::parse(hl, "expected `G n m bipartition_size`"));
    };
    let num = |s: &str, line: usize| {
        s.parse::<usize>()
            .map_err(|_| Error::parse(line, format!("bad integer {s:?}")))
    };
    let (n, m, part) = (num(n, hl)?, num(m, hl)?, num(part, hl)?);
    let mut edges = Vec::with_capacity(m);
    for (line, l) in lines {
        let xs: Vec<&str> = l.split_whitespace().collect();
        let [u, w] = xs[..] else {
            return Err(Error::parse(line, "expected `u v`"));
        };
        edges.push((num(u, line)?, num(w, line)?));
    }
    if edges.len() != m {
        return Err(Error::parse(
            text.lines().count() + 1,
            format!("header promises {m} edges, found {}", edges.len()),
        ));
    }
    if part > n {
        return Err(Error::parse(hl, "bipartition size exceeds vertex count"));
    }
    Ok((Graph::from_edges(n, &edges)?, part))
}
