use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use crate::error::{Error, Result};

use super::exp::exp_interval;

/// `4q - 1 <= v <= q² + q + 1` for a symmetric design of order `q`, and
/// the weaker `v < e^q`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrderBounds {
    pub v: usize,
    pub q: usize,
    pub lower: usize,
    pub upper: usize,
    pub lower_holds: bool,
    pub upper_holds: bool,
    pub exp_q: f64,
    pub below_exp_q: bool,
    /// `q >= (√(4v-3) - 1) / 2`, the upper bound solved for `q`.
    pub min_order: f64,
}

impl OrderBounds {
    pub fn holds(&self) -> bool {
        self.lower_holds && self.upper_holds && self.below_exp_q
    }
}

pub fn order_bounds_check(v: usize, k: usize, lambda: usize) -> Result<OrderBounds> {
    if k < lambda + 2 {
        return Err(Error::Precondition(format!(
            "order k - lambda must be at least 2, got k = {k}, lambda = {lambda}"
        )));
    }
    let q = k - lambda;
    let e = exp_interval(&BigRational::from_integer(BigInt::from(q)));
    let vr = BigRational::from_integer(BigInt::from(v));
    Ok(OrderBounds {
        v,
        q,
        lower: 4 * q - 1,
        upper: q * q + q + 1,
        lower_holds: 4 * q - 1 <= v,
        upper_holds: v <= q * q + q + 1,
        exp_q: e.midpoint_f64(),
        below_exp_q: vr < e.lo,
        min_order: (((4 * v) as f64 - 3.0).sqrt() - 1.0) / 2.0,
    })
}
