//! Parameter sweeps emitting one row per parameter tuple, in ascending
//! tuple order.

use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;

use crate::designs::{projective_plane, Design};
use crate::error::Result;
use crate::field::prime_power;
use crate::resolve::sample_size;

use super::chain::inequality_chain;
use super::expectation::{expected_unresolved, expected_unresolved_std};
use super::monte_carlo::monte_carlo_success;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub v: usize,
    pub k: usize,
    pub lambda: usize,
    pub g: Option<usize>,
    pub s: usize,
    #[serde(rename = "E_exact_num")]
    pub e_exact_num: String,
    #[serde(rename = "E_exact_den")]
    pub e_exact_den: String,
    #[serde(rename = "E_float")]
    pub e_float: f64,
    /// Empty when `s > v - m` and the chain is not needed.
    pub chain_ok: Option<bool>,
    pub mc_rate: Option<f64>,
    pub mc_trials: Option<u64>,
    pub seed: Option<u64>,
}

/// `(v, k, λ)` with `λ(v-1) = k(k-1)`, `λ >= 1`, `k - λ >= 2` and
/// `v <= vmax`, in ascending order.
pub fn symmetric_parameters(vmax: usize) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for v in 2..=vmax {
        for k in 2..v {
            let kk = k * (k - 1);
            if kk % (v - 1) != 0 {
                continue;
            }
            let lambda = kk / (v - 1);
            if lambda >= 1 && k >= lambda + 2 {
                out.push((v, k, lambda));
            }
        }
    }
    out
}

fn symmetric_row(v: usize, k: usize, lambda: usize, mc: Option<(&Design, u64, u64)>) -> Result<SweepRow> {
    let q = k - lambda;
    let s = sample_size(v, q);
    let s_clamped = s.min(v);
    let e = expected_unresolved(v, 2 * q, s_clamped)?;
    let chain = inequality_chain(v, 2 * q, s)?;
    let mc = match mc {
        Some((d, trials, seed)) => Some(monte_carlo_success(d, s_clamped, trials, seed)?),
        None => None,
    };
    Ok(SweepRow {
        v,
        k,
        lambda,
        g: None,
        s,
        e_exact_num: e.numer().to_string(),
        e_exact_den: e.denom().to_string(),
        e_float: e.to_f64().unwrap_or(f64::NAN),
        chain_ok: (!chain.skipped).then_some(chain.ok),
        mc_rate: mc.as_ref().map(|m| m.rate),
        mc_trials: mc.as_ref().map(|m| m.trials),
        seed: mc.as_ref().map(|m| m.seed),
    })
}

/// Every arithmetically admissible symmetric design with `v <= vmax`.
pub fn sweep_symmetric(vmax: usize) -> Result<Vec<SweepRow>> {
    symmetric_parameters(vmax)
        .into_par_iter()
        .map(|(v, k, lambda)| symmetric_row(v, k, lambda, None))
        .collect()
}

/// PG(2, q) for prime powers `2 <= q <= qmax`; with `mc_trials > 0` each
/// plane is also sampled at the randomized sample size.
pub fn sweep_projective(qmax: usize, mc_trials: u64, seed: u64) -> Result<Vec<SweepRow>> {
    let qs: Vec<usize> = (2..=qmax).filter(|&q| prime_power(q as u64).is_some()).collect();
    qs.into_par_iter()
        .map(|q| {
            let v = q * q + q + 1;
            if mc_trials == 0 {
                return symmetric_row(v, q + 1, 1, None);
            }
            let d: Design = projective_plane(q)?.into();
            symmetric_row(v, q + 1, 1, Some((&d, mc_trials, seed)))
        })
        .collect()
}

/// STD_λ[λg; g] with `g >= 2` and `v = λg² <= vmax`, ordered by `(v, g)`.
/// The expectation column is exact; the chain uses `m = 2(k - λ)`.
pub fn sweep_transversal(vmax: usize) -> Result<Vec<SweepRow>> {
    let mut params = Vec::new();
    for g in 2..=vmax {
        for lambda in 1..=vmax / (g * g) {
            params.push((lambda * g * g, g, lambda));
        }
    }
    params.sort_unstable();
    params
        .into_par_iter()
        .map(|(v, g, lambda)| {
            let k = lambda * g;
            let q = k - lambda;
            let s = sample_size(v, q);
            let (exact, _) = expected_unresolved_std(g, k, lambda, s.min(v))?;
            let m = 2 * q;
            let chain_ok = if m < v {
                let c = inequality_chain(v, m, s)?;
                (!c.skipped).then_some(c.ok)
            } else {
                None
            };
            Ok(SweepRow {
                v,
                k,
                lambda,
                g: Some(g),
                s,
                e_exact_num: exact.numer().to_string(),
                e_exact_den: exact.denom().to_string(),
                e_float: exact.to_f64().unwrap_or(f64::NAN),
                chain_ok,
                mc_rate: None,
                mc_trials: None,
                seed: None,
            })
        })
        .collect()
}
