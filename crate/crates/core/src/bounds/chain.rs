//! The chain of inequalities showing `E(N) < 1` at the randomized sample
//! size:
//!
//! ```text
//! C(v,2) < v²/2 < exp(m/v)^s < (1 + m/v + m²/v²)^s
//!        < Π_{i<s} (1 + m/(v-m-i)) = C(v,s) / C(v-m,s)
//! ```
//!
//! Binomial, power and product links are compared as exact rationals. The
//! two links involving `exp` use a rigorous enclosure and are flagged
//! marginal when the relative slack drops under [`MARGINAL_SLACK`].

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, ToPrimitive};
use serde::Serialize;

use crate::error::{Error, Result};

use super::exp::{exp_interval, Interval};
use super::expectation::binomial;

pub const MARGINAL_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Link {
    pub name: &'static str,
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
    /// Decided on exact rationals rather than an enclosure.
    pub exact: bool,
    pub marginal: bool,
}

impl Link {
    fn exact(name: &'static str, lhs: &BigRational, rhs: &BigRational, holds: bool) -> Self {
        Link {
            name,
            lhs: to_f64(lhs),
            rhs: to_f64(rhs),
            holds,
            exact: true,
            marginal: false,
        }
    }

    /// `lhs < rhs` where one side is only known as an enclosure.
    fn enclosed(name: &'static str, lhs: Side<'_>, rhs: Side<'_>) -> Self {
        let (lhs_hi, lhs_mid) = lhs.upper();
        let (rhs_lo, rhs_mid) = rhs.lower();
        let holds = lhs_hi < rhs_lo;
        let slack = if holds {
            to_f64(&((&rhs_lo - &lhs_hi) / &rhs_lo))
        } else {
            0.0
        };
        Link {
            name,
            lhs: lhs_mid,
            rhs: rhs_mid,
            holds,
            exact: false,
            marginal: slack < MARGINAL_SLACK,
        }
    }
}

enum Side<'a> {
    Exact(&'a BigRational),
    Enclosed(&'a Interval),
}

impl Side<'_> {
    fn upper(&self) -> (BigRational, f64) {
        match self {
            Side::Exact(x) => ((*x).clone(), to_f64(x)),
            Side::Enclosed(iv) => (iv.hi.clone(), iv.midpoint_f64()),
        }
    }

    fn lower(&self) -> (BigRational, f64) {
        match self {
            Side::Exact(x) => ((*x).clone(), to_f64(x)),
            Side::Enclosed(iv) => (iv.lo.clone(), iv.midpoint_f64()),
        }
    }
}

fn to_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(f64::INFINITY)
}

fn int(n: usize) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `2 ln v - ln 2 < ms/v` (in floating point) against
/// `v²/2 < exp(ms/v)` (by enclosure).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Equivalence {
    pub log_form: bool,
    pub exp_form: bool,
    pub agree: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChainReport {
    pub v: usize,
    pub m: usize,
    pub s: usize,
    /// `s > v - m`: every pair is separated and `E(N) = 0`, so the chain
    /// is not needed (and its product is undefined).
    pub skipped: bool,
    pub links: Vec<Link>,
    /// `e^t < 1 + t + t²` at `t = m/v`.
    pub side_condition: Option<Link>,
    pub equivalence: Option<Equivalence>,
    /// Every link and the side condition hold with non-marginal slack, and
    /// the two forms of the exp link agree.
    pub ok: bool,
}

fn all_hold(links: &[Link], side: Option<&Link>, eq: Option<&Equivalence>) -> bool {
    links.iter().chain(side).all(|l| l.holds && !l.marginal) && eq.is_none_or(|e| e.agree)
}

/// Evaluates the chain for `0 < m < v` and any `s`. Links that fail are
/// reported, not raised; the chain is skipped when `s > v - m`.
pub fn inequality_chain(v: usize, m: usize, s: usize) -> Result<ChainReport> {
    if m == 0 || m >= v {
        return Err(Error::Precondition(format!("need 0 < m < v, got v = {v}, m = {m}")));
    }
    if s > v - m {
        return Ok(ChainReport {
            v,
            m,
            s,
            skipped: true,
            links: Vec::new(),
            side_condition: None,
            equivalence: None,
            ok: true,
        });
    }
    let t = BigRational::new(m.into(), v.into());
    let pairs = BigRational::from_integer(binomial(v, 2));
    let half_square = int(v * v) / int(2);
    let exp_ms = exp_interval(&(&t * int(s)));
    let quadratic = BigRational::one() + &t + &t * &t;
    let power = Pow::pow(&quadratic, s as u32);
    let product = (0..s).fold(BigRational::one(), |acc, i| acc * (BigRational::one() + int(m) / int(v - m - i)));
    let ratio = BigRational::new(binomial(v, s), binomial(v - m, s));

    let links = vec![
        Link::exact("C(v,2) < v^2/2", &pairs, &half_square, pairs < half_square),
        Link::enclosed(
            "v^2/2 < exp(m/v)^s",
            Side::Exact(&half_square),
            Side::Enclosed(&exp_ms),
        ),
        Link::enclosed(
            "exp(m/v)^s < (1+m/v+m^2/v^2)^s",
            Side::Enclosed(&exp_ms),
            Side::Exact(&power),
        ),
        Link::exact(
            "(1+m/v+m^2/v^2)^s < prod(1+m/(v-m-i))",
            &power,
            &product,
            power < product,
        ),
        Link::exact(
            "prod(1+m/(v-m-i)) = C(v,s)/C(v-m,s)",
            &product,
            &ratio,
            product == ratio,
        ),
    ];
    let exp_t = exp_interval(&t);
    let side_condition = Link::enclosed("exp(t) < 1+t+t^2", Side::Enclosed(&exp_t), Side::Exact(&quadratic));

    let vf = v as f64;
    let log_form = 2.0 * vf.ln() - 2f64.ln() < (m * s) as f64 / vf;
    let exp_form = links[1].holds;
    let equivalence = Equivalence {
        log_form,
        exp_form,
        agree: log_form == exp_form,
    };
    Ok(ChainReport {
        v,
        m,
        s,
        skipped: false,
        ok: all_hold(&links, Some(&side_condition), Some(&equivalence)),
        links,
        side_condition: Some(side_condition),
        equivalence: Some(equivalence),
    })
}
