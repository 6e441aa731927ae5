//! Reference put prices: a long classic COS sum, or Black-Scholes.

use crate::case::{BenchCase, ReferenceSpec};
use crate::error::{BenchError, Result};
use cosnufft::cosrange::{put_coefficients, shifted_charfn};
use cosnufft::{MarketInputs, ModelParams, TruncationRange};
use num_complex::Complex64;
use std::f64::consts::{PI, SQRT_2};

const LANES: usize = 8;
/// Terms between exact phase evaluations in the rotation recurrence.
const RESYNC: usize = 16;

/// Reference puts for `strikes` under the case's reference spec.
pub fn reference_puts(case: &BenchCase, strikes: &[f64]) -> Result<Vec<f64>> {
    let market = case.market()?;
    let puts = match case.reference {
        ReferenceSpec::SelfReference { level, terms } => {
            let range = TruncationRange::for_model(&case.model, case.maturity, level, terms)?;
            classic_sum(&case.model, &market, &range, strikes)
        }
        ReferenceSpec::ClosedForm => match case.model {
            ModelParams::BlackScholes(bs) => strikes
                .iter()
                .map(|&k| black_put(&market, bs.sigma(), k))
                .collect(),
            _ => {
                return Err(BenchError::Reference {
                    case: case.name.clone(),
                    reason: "closed-form reference needs the Black-Scholes model".into(),
                })
            }
        },
    };
    if let Some(j) = puts.iter().position(|p| !p.is_finite()) {
        return Err(BenchError::Reference {
            case: case.name.clone(),
            reason: format!("non-finite reference price at strike {}", strikes[j]),
        });
    }
    Ok(puts)
}

/// Undiscounted-forward Black-Scholes put, `B (K N(-d2) - F N(-d1))`.
pub fn black_put(market: &MarketInputs, sigma: f64, strike: f64) -> f64 {
    let f = market.forward();
    let vol = sigma * market.maturity().sqrt();
    let d1 = ((f / strike).ln() + 0.5 * vol * vol) / vol;
    let d2 = d1 - vol;
    market.discount() * (strike * norm_cdf(-d2) - f * norm_cdf(-d1))
}

fn norm_cdf(x: f64) -> f64 {
    0.5 * libm::erfc(-x / SQRT_2)
}

/// `e^{-2πi r}` for `r = k t` reduced to `[-½, ½]` without losing the low bits.
fn unit_phase(k: f64, t: f64) -> Complex64 {
    let p = k * t;
    let err = k.mul_add(t, -p);
    let r = (p - p.round()) + err;
    Complex64::from_polar(1.0, -2.0 * PI * r)
}

/// Classic strike-factored COS sum, evaluated for many terms.
///
/// The per-strike phases `e^{-iη_k x}` come from a rotation recurrence that
/// is restarted from an exact phase every few terms, over blocks of strikes.
/// Strikes outside the range give NaN.
pub fn classic_sum(
    model: &ModelParams,
    market: &MarketInputs,
    range: &TruncationRange,
    strikes: &[f64],
) -> Vec<f64> {
    let shifted = shifted_charfn(model, market.maturity(), range);
    let u = put_coefficients(range).values;
    let head = 0.5 * shifted[0].re * u[0];
    let weights: Vec<Complex64> = shifted.iter().zip(&u).map(|(c, u)| c * u).collect();
    let forward = market.forward();
    let mut out = vec![f64::NAN; strikes.len()];
    for (chunk_out, chunk_k) in out.chunks_mut(LANES).zip(strikes.chunks(LANES)) {
        let mut turns = [0.0; LANES];
        let mut ok = [false; LANES];
        for (i, &k) in chunk_k.iter().enumerate() {
            let x = (k / forward).ln();
            ok[i] = range.contains(x);
            // η_k x = 2π k x/(2(b-a))
            turns[i] = if ok[i] { x / (2.0 * range.width()) } else { 0.0 };
        }
        let sums = block_sum(&weights, &turns);
        for i in 0..chunk_k.len() {
            if ok[i] {
                chunk_out[i] = market.discount() * chunk_k[i] * (head + sums[i]);
            }
        }
    }
    out
}

/// `Σ_{k≥1} Re(w_k e^{-2πi k t})` per lane.
fn block_sum(weights: &[Complex64], turns: &[f64; LANES]) -> [f64; LANES] {
    let mut step_re = [0.0; LANES];
    let mut step_im = [0.0; LANES];
    for i in 0..LANES {
        let s = unit_phase(1.0, turns[i]);
        step_re[i] = s.re;
        step_im[i] = s.im;
    }
    let mut acc = [0.0; LANES];
    let mut start = 1;
    while start < weights.len() {
        let end = (start + RESYNC).min(weights.len());
        let mut p_re = [0.0; LANES];
        let mut p_im = [0.0; LANES];
        for i in 0..LANES {
            let p = unit_phase(start as f64, turns[i]);
            p_re[i] = p.re;
            p_im[i] = p.im;
        }
        for w in &weights[start..end] {
            for i in 0..LANES {
                acc[i] += w.re * p_re[i] - w.im * p_im[i];
                let re = p_re[i] * step_re[i] - p_im[i] * step_im[i];
                p_im[i] = p_re[i] * step_im[i] + p_im[i] * step_re[i];
                p_re[i] = re;
            }
        }
        start = end;
    }
    acc
}
