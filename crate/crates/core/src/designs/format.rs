//! Plain-text design files.
//!
//! ```text
//! # comment
//! SD v k lambda            or   STD g k lambda
//! <k class lines>               (STD only: point indices of each class)
//! <one line per block>          ascending 0-based point indices
//! ```
//!
//! A symmetric design has `v` block lines, an STD `k·g`.

use std::fmt::Write as _;

use super::{Design, SymmetricDesign, TransversalDesign};
use crate::error::{Error, Result};

fn numbers(line_no: usize, line: &str) -> Result<Vec<usize>> {
    line.split_whitespace()
        .map(|t| {
            t.parse::<usize>()
                .map_err(|_| Error::parse(line_no, format!("bad integer {t:?}")))
        })
        .collect()
}

fn ascending(line_no: usize, xs: Vec<usize>) -> Result<Vec<usize>> {
    if xs.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::parse(line_no, "indices must be strictly ascending"));
    }
    Ok(xs)
}

/// Parses a design file. Validity of the design itself is not checked.
pub fn parse_design(text: &str) -> Result<Design> {
    let eof = text.lines().count() + 1;
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (hline, header) = lines.next().ok_or_else(|| Error::parse(0, "empty file"))?;
    let mut parts = header.split_whitespace();
    let kind = parts.next().unwrap_or_default();
    let params = numbers(hline, &parts.collect::<Vec<_>>().join(" "))?;
    let [a, k, lambda] = params[..] else {
        return Err(Error::parse(hline, "header needs three integers"));
    };

    let mut take = |what: &str, count: usize| -> Result<Vec<Vec<usize>>> {
        (0..count)
            .map(|i| {
                let (n, l) = lines.next().ok_or_else(|| {
                    Error::parse(eof, format!("truncated: missing {what} {i} of {count}"))
                })?;
                ascending(n, numbers(n, l)?)
            })
            .collect()
    };

    let design = match kind {
        "SD" => {
            let blocks = take("block", a)?;
            SymmetricDesign::new(a, k, lambda, &blocks)?.into()
        }
        "STD" => {
            let classes = take("class", k)?;
            let blocks = take("block", k * a)?;
            TransversalDesign::new(a, k, lambda, classes, &blocks)?.into()
        }
        other => return Err(Error::parse(hline, format!("unknown design kind {other:?}"))),
    };
    if let Some((n, _)) = lines.next() {
        return Err(Error::parse(n, "unexpected trailing line"));
    }
    Ok(design)
}

fn join(xs: impl Iterator<Item = usize>) -> String {
    xs.map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

pub fn write_design(d: &Design) -> String {
    let mut out = String::new();
    writeln!(out, "{}", d.header()).unwrap();
    if let Design::Transversal(t) = d {
        for class in t.classes() {
            writeln!(out, "{}", join(class.iter().copied())).unwrap();
        }
    }
    for block in d.blocks() {
        writeln!(out, "{}", join(block.ones())).unwrap();
    }
    out
}
