use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};

pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    num_integer::binomial(BigInt::from(n), BigInt::from(k))
}

/// Probability that a uniform `s`-subset of `v` blocks misses a fixed set
/// of `m` blocks: `C(v-m, s) / C(v, s)`.
pub fn miss_probability(v: usize, m: usize, s: usize) -> BigRational {
    BigRational::new(binomial(v - m, s), binomial(v, s))
}

/// Expected number of point pairs left unseparated by a uniform `s`-subset
/// of blocks when every `B(x) △ B(y)` has `m` blocks:
/// `C(v,2) · C(v-m, s) / C(v, s)`, which is 0 once `s > v - m`.
pub fn expected_unresolved(v: usize, m: usize, s: usize) -> Result<BigRational> {
    if s > v || m > v {
        return Err(Error::Precondition(format!(
            "need 0 <= s <= v and 0 <= m <= v, got v = {v}, m = {m}, s = {s}"
        )));
    }
    Ok(BigRational::from_integer(binomial(v, 2)) * miss_probability(v, m, s))
}

/// Exact expectation and the uniform upper bound for STD_λ[λg; g].
///
/// `k·C(g,2)` pairs share a class and differ on `2k` blocks; the rest
/// differ on `2(k-λ)`. The upper bound charges every pair the smaller
/// symmetric difference.
pub fn expected_unresolved_std(
    g: usize,
    k: usize,
    lambda: usize,
    s: usize,
) -> Result<(BigRational, BigRational)> {
    if lambda == 0 || g < 2 || k != lambda * g {
        return Err(Error::Precondition(format!(
            "need lambda >= 1, g >= 2, k = lambda*g; got g = {g}, k = {k}, lambda = {lambda}"
        )));
    }
    let v = lambda * g * g;
    if s > v {
        return Err(Error::Precondition(format!("need s <= v = {v}, got s = {s}")));
    }
    let same_class = BigInt::from(k) * binomial(g, 2);
    let all = binomial(v, 2);
    let exact = BigRational::from_integer(same_class.clone()) * miss_probability(v, 2 * k, s)
        + BigRational::from_integer(all.clone() - same_class) * miss_probability(v, 2 * (k - lambda), s);
    let upper = BigRational::from_integer(all) * miss_probability(v, 2 * (k - lambda), s);
    assert!(exact <= upper);
    Ok((exact, upper))
}
