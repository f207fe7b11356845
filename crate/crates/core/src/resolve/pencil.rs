use std::collections::{BTreeMap, HashMap};

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::designs::{pencils_of, Design};

/// Index of the unordered pair `{x, y}`, `x < y`, in the flat triangular
/// layout `y(y-1)/2 + x`. Witness pairs are always the smallest in this order.
pub fn pair_index(x: usize, y: usize) -> usize {
    debug_assert!(x < y);
    y * (y - 1) / 2 + x
}

/// Inverse of [`pair_index`].
pub fn pair_from_index(i: usize) -> (usize, usize) {
    let mut y = ((1.0 + (1.0 + 8.0 * i as f64).sqrt()) / 2.0) as usize;
    while y * (y - 1) / 2 > i {
        y -= 1;
    }
    while (y + 1) * y / 2 <= i {
        y += 1;
    }
    (i - y * (y - 1) / 2, y)
}

/// Outcome of a resolving-type check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum Resolution {
    Resolved,
    /// The smallest unresolved pair in triangular order.
    Collision { x: usize, y: usize },
}

impl Resolution {
    pub fn is_resolved(&self) -> bool {
        matches!(self, Resolution::Resolved)
    }
}

/// First pair of equal signatures, smallest `y` first, then smallest `x`.
pub(crate) fn first_collision<K: std::hash::Hash + Eq>(
    signatures: impl IntoIterator<Item = K>,
) -> Resolution {
    let mut first_seen: HashMap<K, usize> = HashMap::new();
    for (y, sig) in signatures.into_iter().enumerate() {
        if let Some(&x) = first_seen.get(&sig) {
            return Resolution::Collision { x, y };
        }
        first_seen.insert(sig, y);
    }
    Resolution::Resolved
}

/// `B(x)` for every point `x`: the blocks through it, as a bitset over
/// block indices.
///
/// A block set `S` separates points `x, y` iff it meets `B(x) △ B(y)`,
/// equivalently iff `B(x) ∩ S ≠ B(y) ∩ S`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PencilTable {
    blocks: usize,
    pencils: Vec<FixedBitSet>,
}

impl PencilTable {
    /// Pencils of the points of `d`.
    pub fn for_points(d: &Design) -> Self {
        Self::from_structure(d.num_points(), d.blocks())
    }

    /// Pencils of the blocks of `d` (the points of its dual): block `B`
    /// maps to the set of points on it.
    pub fn for_blocks(d: &Design) -> Self {
        PencilTable {
            blocks: d.num_points(),
            pencils: d.blocks().to_vec(),
        }
    }

    pub fn from_structure(points: usize, blocks: &[FixedBitSet]) -> Self {
        PencilTable {
            blocks: blocks.len(),
            pencils: pencils_of(points, blocks),
        }
    }

    pub fn num_points(&self) -> usize {
        self.pencils.len()
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks
    }

    pub fn pencil(&self, x: usize) -> &FixedBitSet {
        &self.pencils[x]
    }

    pub fn symm_diff(&self, x: usize, y: usize) -> FixedBitSet {
        let mut d = self.pencils[x].clone();
        d.symmetric_difference_with(&self.pencils[y]);
        d
    }

    pub fn symm_diff_size(&self, x: usize, y: usize) -> usize {
        self.pencils[x].symmetric_difference_count(&self.pencils[y])
    }

    pub fn mask(&self, s: &[usize]) -> FixedBitSet {
        let mut m = FixedBitSet::with_capacity(self.blocks);
        m.extend(s.iter().copied());
        m
    }

    fn signatures<'a>(&'a self, mask: &'a FixedBitSet) -> impl Iterator<Item = FixedBitSet> + 'a {
        self.pencils.iter().map(move |p| {
            let mut sig = p.clone();
            sig.intersect_with(mask);
            sig
        })
    }

    /// Whether `s` meets `B(x) △ B(y)` for every pair of distinct points.
    pub fn is_semi_resolving(&self, s: &[usize]) -> Resolution {
        self.is_semi_resolving_mask(&self.mask(s))
    }

    pub fn is_semi_resolving_mask(&self, mask: &FixedBitSet) -> Resolution {
        first_collision(self.signatures(mask))
    }

    /// Number of point pairs `s` fails to separate.
    pub fn unresolved_pairs(&self, s: &[usize]) -> u64 {
        let mask = self.mask(s);
        let mut classes: HashMap<FixedBitSet, u64> = HashMap::new();
        for sig in self.signatures(&mask) {
            *classes.entry(sig).or_default() += 1;
        }
        classes.values().map(|&c| c * (c - 1) / 2).sum()
    }

    /// First pair of points with identical pencils.
    pub fn first_inseparable(&self) -> Option<(usize, usize)> {
        match first_collision(self.pencils.iter()) {
            Resolution::Resolved => None,
            Resolution::Collision { x, y } => Some((x, y)),
        }
    }

    /// Histogram of `|B(x) △ B(y)|` over all pairs of distinct points.
    pub fn symm_diff_histogram(&self) -> BTreeMap<usize, u64> {
        let mut hist = BTreeMap::new();
        let v = self.num_points();
        for y in 0..v {
            for x in 0..y {
                *hist.entry(self.symm_diff_size(x, y)).or_default() += 1;
            }
        }
        hist
    }
}

/// Exhaustive histogram of symmetric-difference sizes of point pencils.
pub fn symm_diff_sizes(d: &Design) -> BTreeMap<usize, u64> {
    PencilTable::for_points(d).symm_diff_histogram()
}
