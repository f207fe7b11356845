//! Symmetric designs and symmetric transversal designs.
//!
//! Points and blocks are dense 0-based indices. Each block is a
//! [`FixedBitSet`] over the point universe; the pencil of a point (the
//! blocks through it) is the same kind of bitset over the block universe.

use std::fmt;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::error::{Error, Result};

mod construct;
mod format;
mod symmetric;
mod transversal;

pub use construct::{biaffine_plane, hadamard_design, hadamard_std, projective_plane, trivial_design};
pub use format::{parse_design, write_design};
pub use symmetric::SymmetricDesign;
pub use transversal::TransversalDesign;

/// One failed axiom, with the first witness found in index order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    BlockCount { expected: usize, found: usize },
    BlockSize { block: usize, size: usize, expected: usize },
    PointPair { x: usize, y: usize, count: usize, expected: usize },
    BlockPair { a: usize, b: usize, count: usize, expected: usize },
    OrderBounds { order: i64, v: usize, lower: i64, upper: i64 },
    ClassPartition { detail: String },
    NotTransversal { block: usize, class: usize, hits: usize },
    NotSymmetric { k: usize, lambda: usize, g: usize, blocks: usize },
    Dual { detail: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::BlockCount { expected, found } => {
                write!(f, "expected {expected} blocks, found {found}")
            }
            Violation::BlockSize { block, size, expected } => {
                write!(f, "block {block} has size {size}, expected {expected}")
            }
            Violation::PointPair { x, y, count, expected } => {
                write!(f, "points {x},{y} lie in {count} common blocks, expected {expected}")
            }
            Violation::BlockPair { a, b, count, expected } => {
                write!(f, "blocks {a},{b} meet in {count} points, expected {expected}")
            }
            Violation::OrderBounds { order, v, lower, upper } => {
                write!(f, "order {order}: {lower} <= {v} <= {upper} fails")
            }
            Violation::ClassPartition { detail } => write!(f, "point classes: {detail}"),
            Violation::NotTransversal { block, class, hits } => {
                write!(f, "block {block} meets class {class} in {hits} points")
            }
            Violation::NotSymmetric { k, lambda, g, blocks } => write!(
                f,
                "not symmetric: k={k}, lambda*g={}, blocks={blocks}, lambda*g^2={}",
                lambda * g,
                lambda * g * g
            ),
            Violation::Dual { detail } => write!(f, "dual: {detail}"),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    /// `(4q - 1, v, q^2 + q + 1)` when the order `q` is at least 2.
    pub order_bounds: Option<(i64, usize, i64)>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub(crate) fn push(&mut self, v: Violation) {
        self.violations.push(v);
    }

    pub(crate) fn into_result(self) -> Result<()> {
        match self.violations.first() {
            None => Ok(()),
            Some(v) => Err(Error::InvalidDesign(v.to_string())),
        }
    }
}

/// Either kind of design handled by the toolkit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Design {
    Symmetric(SymmetricDesign),
    Transversal(TransversalDesign),
}

impl From<SymmetricDesign> for Design {
    fn from(d: SymmetricDesign) -> Self {
        Design::Symmetric(d)
    }
}

impl From<TransversalDesign> for Design {
    fn from(d: TransversalDesign) -> Self {
        Design::Transversal(d)
    }
}

impl Design {
    pub fn num_points(&self) -> usize {
        match self {
            Design::Symmetric(d) => d.v(),
            Design::Transversal(d) => d.v(),
        }
    }

    pub fn blocks(&self) -> &[FixedBitSet] {
        match self {
            Design::Symmetric(d) => d.blocks(),
            Design::Transversal(d) => d.blocks(),
        }
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks().len()
    }

    pub fn k(&self) -> usize {
        match self {
            Design::Symmetric(d) => d.k(),
            Design::Transversal(d) => d.k(),
        }
    }

    pub fn lambda(&self) -> usize {
        match self {
            Design::Symmetric(d) => d.lambda(),
            Design::Transversal(d) => d.lambda(),
        }
    }

    /// `k - λ`.
    pub fn order(&self) -> i64 {
        self.k() as i64 - self.lambda() as i64
    }

    pub fn validate(&self) -> ValidationReport {
        match self {
            Design::Symmetric(d) => d.validate(),
            Design::Transversal(d) => d.validate(),
        }
    }

    pub fn dual(&self) -> Result<Design> {
        Ok(match self {
            Design::Symmetric(d) => Design::Symmetric(d.dual()?),
            Design::Transversal(d) => Design::Transversal(d.dual()?),
        })
    }

    /// Blocks through each point, as bitsets over block indices.
    pub fn pencils(&self) -> Vec<FixedBitSet> {
        pencils_of(self.num_points(), self.blocks())
    }

    /// Short parameter string, `SD v k lambda` or `STD g k lambda`.
    pub fn header(&self) -> String {
        match self {
            Design::Symmetric(d) => format!("SD {} {} {}", d.v(), d.k(), d.lambda()),
            Design::Transversal(d) => format!("STD {} {} {}", d.g(), d.k(), d.lambda()),
        }
    }

    pub fn as_symmetric(&self) -> Option<&SymmetricDesign> {
        match self {
            Design::Symmetric(d) => Some(d),
            Design::Transversal(_) => None,
        }
    }

    pub fn as_transversal(&self) -> Option<&TransversalDesign> {
        match self {
            Design::Transversal(d) => Some(d),
            Design::Symmetric(_) => None,
        }
    }
}

pub(crate) fn bitset_from(universe: usize, items: &[usize]) -> Result<FixedBitSet> {
    let mut set = FixedBitSet::with_capacity(universe);
    for &i in items {
        if i >= universe {
            return Err(Error::Precondition(format!(
                "index {i} out of range 0..{universe}"
            )));
        }
        set.insert(i);
    }
    Ok(set)
}

pub(crate) fn pencils_of(points: usize, blocks: &[FixedBitSet]) -> Vec<FixedBitSet> {
    let mut out = vec![FixedBitSet::with_capacity(blocks.len()); points];
    for (b, block) in blocks.iter().enumerate() {
        for x in block.ones() {
            out[x].insert(b);
        }
    }
    out
}

/// First pair `(i, j)`, `i < j`, whose intersection size differs from
/// `expected(i, j)`.
pub(crate) fn first_bad_pair(
    sets: &[FixedBitSet],
    expected: impl Fn(usize, usize) -> usize,
) -> Option<(usize, usize, usize, usize)> {
    for i in 0..sets.len() {
        for j in i + 1..sets.len() {
            let count = sets[i].intersection_count(&sets[j]);
            let want = expected(i, j);
            if count != want {
                return Some((i, j, count, want));
            }
        }
    }
    None
}
