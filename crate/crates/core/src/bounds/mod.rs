//! Exact evaluation of the expectation bounds behind the randomized
//! semi-resolving sets.
//!
//! `N` counts the point pairs a uniform `s`-subset of blocks leaves
//! unseparated. A pair `{x, y}` is unseparated exactly when the subset
//! misses all `m = |B(x) △ B(y)|` blocks, so `E(N)` is a sum of binomial
//! ratios, computed here as exact rationals.

mod chain;
mod exp;
mod expectation;
mod monte_carlo;
mod order;
mod sweep;

use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::designs::Design;
use crate::error::{Error, Result};

pub use chain::{inequality_chain, ChainReport, Equivalence, Link, MARGINAL_SLACK};
pub use exp::{exp_interval, Interval};
pub use expectation::{binomial, expected_unresolved, expected_unresolved_std, miss_probability};
pub use monte_carlo::{exhaustive_success, monte_carlo_success, Exhaustive, MonteCarlo, EXHAUSTIVE_LIMIT};
pub use order::{order_bounds_check, OrderBounds};
pub use sweep::{sweep_projective, sweep_symmetric, sweep_transversal, symmetric_parameters, SweepRow};

/// An exact rational with a float rendering, for reports.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExactValue {
    pub num: String,
    pub den: String,
    pub float: f64,
}

impl From<&BigRational> for ExactValue {
    fn from(x: &BigRational) -> Self {
        ExactValue {
            num: x.numer().to_string(),
            den: x.denom().to_string(),
            float: x.to_f64().unwrap_or(f64::NAN),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub v: usize,
    pub k: usize,
    pub lambda: usize,
    pub g: Option<usize>,
    /// Symmetric-difference sizes: `[2(k-λ)]`, or `[2k, 2(k-λ)]` for an STD.
    pub m: Vec<usize>,
    pub s: usize,
    pub e_exact: ExactValue,
    pub e_upper: ExactValue,
    pub chain: Option<ChainReport>,
}

/// `E(N)` for `d` at sample size `s`, exactly and as the uniform upper
/// bound (equal for symmetric designs).
pub fn design_expectation(d: &Design, s: usize) -> Result<(BigRational, BigRational)> {
    match d {
        Design::Symmetric(sd) => {
            let e = expected_unresolved(sd.v(), 2 * order_of(d)?, s)?;
            Ok((e.clone(), e))
        }
        Design::Transversal(t) => expected_unresolved_std(t.g(), t.k(), t.lambda(), s),
    }
}

fn order_of(d: &Design) -> Result<usize> {
    usize::try_from(d.order())
        .map_err(|_| Error::Precondition(format!("negative order {}", d.order())))
}

/// Expectations and, when `0 < m < v`, the inequality chain for `d` at
/// sample size `s`.
pub fn bound_report(d: &Design, s: usize) -> Result<BoundReport> {
    d.validate().into_result()?;
    let v = d.num_points();
    let q = order_of(d)?;
    let (exact, upper) = design_expectation(d, s)?;
    let (g, m) = match d {
        Design::Symmetric(_) => (None, vec![2 * q]),
        Design::Transversal(t) => (Some(t.g()), vec![2 * t.k(), 2 * q]),
    };
    let chain = if q > 0 && 2 * q < v {
        Some(inequality_chain(v, 2 * q, s)?)
    } else {
        None
    };
    Ok(BoundReport {
        v,
        k: d.k(),
        lambda: d.lambda(),
        g,
        m,
        s,
        e_exact: (&exact).into(),
        e_upper: (&upper).into(),
        chain,
    })
}
