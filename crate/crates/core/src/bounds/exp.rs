//! Rigorous enclosures of `exp(x)` for non-negative rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Fixed-point precision in bits.
const PRECISION: usize = 256;

/// Closed interval `[lo, hi]` known to contain a real number.
#[derive(Debug, Clone, PartialEq)]
pub struct Interval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl Interval {
    pub fn midpoint_f64(&self) -> f64 {
        ((&self.lo + &self.hi) / BigRational::from_integer(2.into()))
            .to_f64()
            .unwrap_or(f64::INFINITY)
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }
}

fn ceil_div(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = (a / b, a % b);
    if r.is_zero() {
        q
    } else {
        q + 1
    }
}

/// Encloses `exp(x)` for `x >= 0`: Taylor series of `exp(x / 2^r)` with
/// `x / 2^r < 1/2`, then `r` squarings, each step rounded outwards.
pub fn exp_interval(x: &BigRational) -> Interval {
    assert!(!x.is_negative(), "exp_interval needs x >= 0");
    let one = BigInt::one() << PRECISION;
    let a = x.numer().clone();
    let mut r = 0usize;
    while (BigInt::from(2) * &a) >= (x.denom() << r) {
        r += 1;
    }
    let b = x.denom() << r;

    let (mut lo, mut hi) = (one.clone(), one.clone());
    let (mut t_lo, mut t_hi) = (one.clone(), one.clone());
    let mut i = 1u32;
    loop {
        let d = &b * i;
        t_lo = (&t_lo * &a) / &d;
        t_hi = ceil_div(&(&t_hi * &a), &d);
        lo += &t_lo;
        hi += &t_hi;
        // with y < 1/2 each later term is under half the previous one
        if t_hi <= BigInt::one() {
            hi += &t_hi + BigInt::one();
            break;
        }
        i += 1;
    }
    for _ in 0..r {
        lo = (&lo * &lo) >> PRECISION;
        hi = ceil_div(&(&hi * &hi), &one);
    }
    Interval {
        lo: BigRational::new(lo, one.clone()),
        hi: BigRational::new(hi, one),
    }
}
