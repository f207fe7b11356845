use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;
use serde::Serialize;

use crate::designs::Design;
use crate::error::{Error, Result};
use crate::resolve::{sample_subset, trial_rng, PencilTable};

use super::design_expectation;
use super::expectation::binomial;

/// Largest number of subsets [`exhaustive_success`] will enumerate.
pub const EXHAUSTIVE_LIMIT: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MonteCarlo {
    pub s: usize,
    pub trials: u64,
    pub successes: u64,
    pub rate: f64,
    pub stderr: f64,
    /// `1 - E(N)`, from Markov's inequality on the unresolved-pair count.
    pub markov_lower: f64,
    pub seed: u64,
}

fn check_size(d: &Design, s: usize) -> Result<PencilTable> {
    d.validate().into_result()?;
    if s > d.num_blocks() {
        return Err(Error::Precondition(format!(
            "need s <= {} blocks, got s = {s}",
            d.num_blocks()
        )));
    }
    Ok(PencilTable::for_points(d))
}

fn markov(d: &Design, s: usize) -> Result<f64> {
    let (exact, _) = design_expectation(d, s)?;
    Ok((BigRational::one() - exact).to_f64().unwrap_or(f64::NEG_INFINITY))
}

/// Fraction of `trials` seeded uniform `s`-subsets of blocks that
/// semi-resolve the points. Trial `t` draws from [`trial_rng`]`(seed, t)`,
/// so the result does not depend on thread scheduling.
pub fn monte_carlo_success(d: &Design, s: usize, trials: u64, seed: u64) -> Result<MonteCarlo> {
    if trials == 0 {
        return Err(Error::Precondition("need at least one trial".into()));
    }
    let table = check_size(d, s)?;
    let nb = table.num_blocks();
    let successes = (0..trials)
        .into_par_iter()
        .filter(|&t| {
            let set = sample_subset(&mut trial_rng(seed, t), nb, s);
            table.is_semi_resolving(&set).is_resolved()
        })
        .count() as u64;
    let rate = successes as f64 / trials as f64;
    Ok(MonteCarlo {
        s,
        trials,
        successes,
        rate,
        stderr: (rate * (1.0 - rate) / trials as f64).sqrt(),
        markov_lower: markov(d, s)?,
        seed,
    })
}

/// Every `s`-subset of blocks, enumerated.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Exhaustive {
    pub s: usize,
    pub subsets: u64,
    pub successes: u64,
    /// Exact success fraction as `(numerator, denominator)` strings.
    pub rate: (String, String),
    pub rate_f64: f64,
    pub markov_lower: f64,
    #[serde(skip)]
    pub mean_unresolved: BigRational,
}

/// Enumerates all `s`-subsets of blocks (at most [`EXHAUSTIVE_LIMIT`]),
/// recording the exact success fraction and the exact mean number of
/// unseparated point pairs.
pub fn exhaustive_success(d: &Design, s: usize) -> Result<Exhaustive> {
    let table = check_size(d, s)?;
    let nb = table.num_blocks();
    let count = binomial(nb, s);
    let subsets = count.to_u64().filter(|&c| c <= EXHAUSTIVE_LIMIT).ok_or(Error::LimitExceeded {
        size: count.to_usize().unwrap_or(usize::MAX),
        limit: EXHAUSTIVE_LIMIT as usize,
    })?;
    let count_unresolved = unresolved_counter(&table);
    let (successes, unresolved) = (0..nb)
        .combinations(s)
        .par_bridge()
        .map(|set| {
            let u = count_unresolved(&set);
            (u64::from(u == 0), u)
        })
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
    let rate = BigRational::new(BigInt::from(successes), BigInt::from(subsets));
    Ok(Exhaustive {
        s,
        subsets,
        successes,
        rate: (rate.numer().to_string(), rate.denom().to_string()),
        rate_f64: successes as f64 / subsets as f64,
        markov_lower: markov(d, s)?,
        mean_unresolved: BigRational::new(BigInt::from(unresolved), BigInt::from(subsets)),
    })
}

type Counter<'a> = Box<dyn Fn(&[usize]) -> u64 + Sync + 'a>;

/// Unresolved-pair counter; packs pencils into `u128` when they fit.
fn unresolved_counter(table: &PencilTable) -> Counter<'_> {
    if table.num_blocks() > 128 {
        return Box::new(|set| table.unresolved_pairs(set));
    }
    let pencils: Vec<u128> = (0..table.num_points())
        .map(|x| table.pencil(x).ones().fold(0, |m, b| m | 1 << b))
        .collect();
    Box::new(move |set| {
        let mask = set.iter().fold(0u128, |m, &b| m | 1 << b);
        let mut sigs: Vec<u128> = pencils.iter().map(|p| p & mask).collect();
        sigs.sort_unstable();
        sigs.chunk_by(|a, b| a == b)
            .map(|run| (run.len() * (run.len() - 1) / 2) as u64)
            .sum()
    })
}
