//! Exact minimum hitting set by branch and bound, used for minimum
//! semi-resolving sets. The universe is at most 64 elements, so every set
//! is a `u64` mask.

use serde::Serialize;

use crate::designs::Design;
use crate::error::{Error, Result};

use super::pencil::PencilTable;
use super::semi::greedy_on;

/// Largest block count accepted by [`min_semi_resolving`] by default.
pub const DEFAULT_EXACT_LIMIT: usize = 40;
/// Default search-node budget.
pub const DEFAULT_NODE_BUDGET: u64 = 50_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExactOutcome {
    pub set: Vec<usize>,
    pub nodes: u64,
}

fn bits(mut m: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        (m != 0).then(|| {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            i
        })
    })
}

fn to_mask(xs: &[usize]) -> u64 {
    xs.iter().fold(0, |m, &x| m | (1 << x))
}

/// Drops duplicates and supersets: hitting a set hits all its supersets.
fn minimal_sets(mut sets: Vec<u64>) -> Vec<u64> {
    sets.sort_unstable_by_key(|s| (s.count_ones(), *s));
    sets.dedup();
    let mut keep: Vec<u64> = Vec::with_capacity(sets.len());
    for s in sets {
        if !keep.iter().any(|&k| k & !s == 0) {
            keep.push(s);
        }
    }
    keep
}

struct Search<'a> {
    sets: &'a [u64],
    best: u64,
    nodes: u64,
    budget: u64,
}

impl Search<'_> {
    fn run(&mut self, chosen: u64, excluded: u64) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::BudgetExceeded { budget: self.budget });
        }
        let size = chosen.count_ones();
        let mut branch: Option<u64> = None;
        // disjoint packing of still-open sets: each needs its own element
        let mut packed = 0u64;
        let mut lower = 0u32;
        for &s in self.sets {
            if s & chosen != 0 {
                continue;
            }
            let open = s & !excluded;
            if open == 0 {
                return Ok(());
            }
            if branch.is_none_or(|b| open.count_ones() < b.count_ones()) {
                branch = Some(open);
            }
            if open & packed == 0 {
                packed |= open;
                lower += 1;
            }
        }
        let Some(open) = branch else {
            if size < self.best.count_ones() {
                self.best = chosen;
            }
            return Ok(());
        };
        if size + lower >= self.best.count_ones() {
            return Ok(());
        }
        let mut ex = excluded;
        for e in bits(open) {
            self.run(chosen | (1 << e), ex)?;
            ex |= 1 << e;
        }
        Ok(())
    }
}

/// Minimum-cardinality subset of `0..universe` meeting every set in
/// `sets`, starting from the upper bound `initial` (itself a hitting set).
///
/// Branches on the open set with fewest available elements; branch `i`
/// takes its `i`-th element and excludes the earlier ones.
pub fn min_hitting_set(
    universe: usize,
    sets: &[Vec<usize>],
    initial: &[usize],
    budget: u64,
) -> Result<ExactOutcome> {
    if universe > 64 {
        return Err(Error::LimitExceeded { size: universe, limit: 64 });
    }
    if budget == 0 {
        return Err(Error::BudgetExceeded { budget });
    }
    let masks = minimal_sets(sets.iter().map(|s| to_mask(s)).collect());
    if masks.contains(&0) {
        return Err(Error::Precondition("an empty set cannot be hit".into()));
    }
    let initial = to_mask(initial);
    if masks.iter().any(|&s| s & initial == 0) {
        return Err(Error::Precondition("initial solution is not a hitting set".into()));
    }
    let mut search = Search {
        sets: &masks,
        best: initial,
        nodes: 0,
        budget,
    };
    search.run(0, 0)?;
    Ok(ExactOutcome {
        set: bits(search.best).collect(),
        nodes: search.nodes,
    })
}

pub(crate) fn min_semi_on(table: &PencilTable, limit: usize, budget: u64) -> Result<ExactOutcome> {
    let nb = table.num_blocks();
    if nb > limit.min(64) {
        return Err(Error::LimitExceeded { size: nb, limit: limit.min(64) });
    }
    if budget == 0 {
        return Err(Error::BudgetExceeded { budget });
    }
    let initial = greedy_on(table)?;
    let v = table.num_points();
    let sets: Vec<Vec<usize>> = (0..v)
        .flat_map(|y| (0..y).map(move |x| (x, y)))
        .map(|(x, y)| table.symm_diff(x, y).ones().collect())
        .collect();
    min_hitting_set(nb, &sets, &initial, budget)
}

/// Minimum semi-resolving set for the points of `d`: a minimum hitting set
/// of the family `{B(x) △ B(y)}`.
pub fn min_semi_resolving(d: &Design, budget: u64) -> Result<ExactOutcome> {
    min_semi_resolving_with_limit(d, DEFAULT_EXACT_LIMIT, budget)
}

pub fn min_semi_resolving_with_limit(d: &Design, limit: usize, budget: u64) -> Result<ExactOutcome> {
    d.validate().into_result()?;
    min_semi_on(&PencilTable::for_points(d), limit, budget)
}
