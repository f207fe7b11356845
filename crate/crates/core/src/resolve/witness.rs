//! Witness files and their verification.
//!
//! ```text
//! RS
//! semi-points | semi-blocks | split | full
//! <indices, whitespace separated, any number of lines>
//! ```
//!
//! `semi-points` lists block indices, `semi-blocks` point indices; `split`
//! and `full` list incidence-graph vertices (points `0..v`, then blocks).

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::designs::Design;
use crate::error::{Error, Result};
use crate::incidence::{incidence_graph, Graph};

use super::check::{is_resolving, semi_resolves_blocks_by_distance, semi_resolves_points_by_distance};
use super::pencil::{PencilTable, Resolution};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Role {
    SemiPoints,
    SemiBlocks,
    Split,
    Full,
}

impl Role {
    pub fn as_str(&self) -> &'static str {
        match self {
            Role::SemiPoints => "semi-points",
            Role::SemiBlocks => "semi-blocks",
            Role::Split => "split",
            Role::Full => "full",
        }
    }
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Role {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "semi-points" => Ok(Role::SemiPoints),
            "semi-blocks" => Ok(Role::SemiBlocks),
            "split" => Ok(Role::Split),
            "full" => Ok(Role::Full),
            other => Err(Error::parse(0, format!("unknown role {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub role: Role,
    pub indices: Vec<usize>,
}

pub fn write_witness(w: &Witness) -> String {
    let idx: Vec<String> = w.indices.iter().map(usize::to_string).collect();
    format!("RS\n{}\n{}\n", w.role, idx.join(" "))
}

pub fn parse_witness(text: &str) -> Result<Witness> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    match lines.next() {
        Some((_, "RS")) => {}
        Some((n, _)) => return Err(Error::parse(n, "expected `RS` header")),
        None => return Err(Error::parse(0, "empty file")),
    }
    let (rl, role) = lines
        .next()
        .ok_or_else(|| Error::parse(text.lines().count() + 1, "missing role line"))?;
    let role = role.parse::<Role>().map_err(|_| Error::parse(rl, format!("unknown role {role:?}")))?;
    let mut indices = Vec::new();
    for (n, l) in lines {
        for t in l.split_whitespace() {
            indices.push(
                t.parse::<usize>()
                    .map_err(|_| Error::parse(n, format!("bad index {t:?}")))?,
            );
        }
    }
    Ok(Witness { role, indices })
}

/// Verdicts of the two routes. `symmetric_difference` is `None` for
/// `full` witnesses, where only the distance route applies.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub role: Role,
    pub symmetric_difference: Option<Resolution>,
    pub distance: Resolution,
    pub agree: bool,
    pub passed: bool,
}

impl VerifyReport {
    fn new(role: Role, symmetric_difference: Option<Resolution>, distance: Resolution) -> Self {
        let agree = symmetric_difference.is_none_or(|s| s.is_resolved() == distance.is_resolved());
        let passed = agree && distance.is_resolved();
        VerifyReport {
            role,
            symmetric_difference,
            distance,
            agree,
            passed,
        }
    }
}

fn shift(r: Resolution, by: usize) -> Resolution {
    match r {
        Resolution::Resolved => r,
        Resolution::Collision { x, y } => Resolution::Collision { x: x + by, y: y + by },
    }
}

fn first_failure(a: Resolution, b: Resolution) -> Resolution {
    if a.is_resolved() {
        b
    } else {
        a
    }
}

fn distinct_in_range(indices: &[usize], n: usize, what: &str) -> Result<()> {
    let mut seen = vec![false; n];
    for &i in indices {
        if i >= n {
            return Err(Error::Precondition(format!("{what} {i} out of range 0..{n}")));
        }
        if std::mem::replace(&mut seen[i], true) {
            return Err(Error::Precondition(format!("{what} {i} listed twice")));
        }
    }
    Ok(())
}

/// Re-checks a witness against a design by the pencil route and the
/// distance route.
pub fn verify_witness(d: &Design, w: &Witness) -> Result<VerifyReport> {
    let g = incidence_graph(d)?;
    let v = d.num_points();
    Ok(match w.role {
        Role::SemiPoints => {
            distinct_in_range(&w.indices, d.num_blocks(), "block")?;
            let sd = PencilTable::for_points(d).is_semi_resolving(&w.indices);
            let dist = semi_resolves_points_by_distance(&g, &w.indices)?;
            VerifyReport::new(w.role, Some(sd), dist)
        }
        Role::SemiBlocks => {
            distinct_in_range(&w.indices, v, "point")?;
            let sd = PencilTable::for_blocks(d).is_semi_resolving(&w.indices);
            let dist = semi_resolves_blocks_by_distance(&g, &w.indices)?;
            VerifyReport::new(w.role, Some(sd), dist)
        }
        Role::Split => {
            distinct_in_range(&w.indices, g.n(), "vertex")?;
            let points: Vec<usize> = w.indices.iter().copied().filter(|&i| i < v).collect();
            let blocks: Vec<usize> = w.indices.iter().filter(|&&i| i >= v).map(|&i| i - v).collect();
            let sd = first_failure(
                PencilTable::for_points(d).is_semi_resolving(&blocks),
                shift(PencilTable::for_blocks(d).is_semi_resolving(&points), v),
            );
            let dist = first_failure(
                first_failure(
                    semi_resolves_points_by_distance(&g, &blocks)?,
                    shift(semi_resolves_blocks_by_distance(&g, &points)?, v),
                ),
                is_resolving(&g, &w.indices)?,
            );
            VerifyReport::new(w.role, Some(sd), dist)
        }
        Role::Full => verify_on_graph(&g, w)?,
    })
}

/// Verifies a `full` witness against a bare graph.
pub fn verify_on_graph(g: &Graph, w: &Witness) -> Result<VerifyReport> {
    if w.role != Role::Full {
        return Err(Error::Precondition(format!(
            "a graph file can only verify `full` witnesses, got `{}`",
            w.role
        )));
    }
    distinct_in_range(&w.indices, g.n(), "vertex")?;
    Ok(VerifyReport::new(w.role, None, is_resolving(g, &w.indices)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::designs::projective_plane;

    #[test]
    fn text_round_trip() {
        let w = Witness {
            role: Role::Split,
            indices: vec![0, 3, 9],
        };
        let text = write_witness(&w);
        assert_eq!(text, "RS\nsplit\n0 3 9\n");
        assert_eq!(parse_witness(&text).unwrap(), w);
        let empty = parse_witness("RS\nsemi-points\n").unwrap();
        assert!(empty.indices.is_empty());
    }

    #[test]
    fn malformed() {
        assert!(parse_witness("").is_err());
        assert!(parse_witness("RS\n").is_err());
        assert!(parse_witness("XX\nsplit\n1\n").is_err());
        assert!(parse_witness("RS\nhalf\n1\n").is_err());
        assert!(parse_witness("RS\nsplit\n1 a\n").is_err());
    }

    #[test]
    fn fano_semi_points() {
        let d: Design = projective_plane(2).unwrap().into();
        let all = Witness {
            role: Role::SemiPoints,
            indices: (0..7).collect(),
        };
        assert!(verify_witness(&d, &all).unwrap().passed);
        let empty = Witness {
            role: Role::SemiPoints,
            indices: vec![],
        };
        let r = verify_witness(&d, &empty).unwrap();
        assert!(!r.passed);
        assert!(r.agree);
        assert_eq!(r.distance, Resolution::Collision { x: 0, y: 1 });
        assert!(verify_witness(
            &d,
            &Witness {
                role: Role::SemiPoints,
                indices: vec![7]
            }
        )
        .is_err());
    }

    #[test]
    fn full_on_graph_only() {
        let d: Design = projective_plane(2).unwrap().into();
        let g = incidence_graph(&d).unwrap();
        let w = Witness {
            role: Role::SemiPoints,
            indices: vec![0],
        };
        assert!(verify_on_graph(&g, &w).is_err());
        let w = Witness {
            role: Role::Full,
            indices: (0..14).collect(),
        };
        assert!(verify_on_graph(&g, &w).unwrap().passed);
    }
}
