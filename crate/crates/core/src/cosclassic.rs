//! Reference COS pricer: per-strike summation of the cosine series, in the
//! strike-factored (`U_k`) and strike-embedded (`V_k(x)`) forms.

use crate::charfn::{check_maturity, CharacteristicFunction};
use crate::cosrange::{put_coefficients, shifted_charfn, TruncationRange};
use crate::error::{CosError, Result};
use crate::market::MarketInputs;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// Strikes of one maturity with their log-moneyness `x_j = ln(K_j/F)`.
#[derive(Debug, Clone, PartialEq)]
pub struct StrikeBatch {
    strikes: Vec<f64>,
    log_moneyness: Vec<f64>,
    valid: Vec<bool>,
}

impl StrikeBatch {
    /// A strike is priceable iff its log-moneyness lies strictly inside `(a, b)`.
    pub fn new(strikes: Vec<f64>, market: &MarketInputs, range: &TruncationRange) -> Result<Self> {
        for (index, &value) in strikes.iter().enumerate() {
            if !(value.is_finite() && value > 0.0) {
                return Err(CosError::InvalidStrike { index, value });
            }
        }
        let log_moneyness: Vec<f64> = strikes.iter().map(|k| (k / market.forward()).ln()).collect();
        let valid = log_moneyness.iter().map(|&x| range.contains(x)).collect();
        Ok(Self {
            strikes,
            log_moneyness,
            valid,
        })
    }

    pub fn strikes(&self) -> &[f64] {
        &self.strikes
    }

    pub fn log_moneyness(&self) -> &[f64] {
        &self.log_moneyness
    }

    pub fn valid(&self) -> &[bool] {
        &self.valid
    }

    pub fn len(&self) -> usize {
        self.strikes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.strikes.is_empty()
    }

    pub fn valid_count(&self) -> usize {
        self.valid.iter().filter(|&&v| v).count()
    }

    /// Evaluates `f(strike, log_moneyness)` on valid entries; invalid ones get NaN.
    pub(crate) fn map_valid<F>(&self, parallel: bool, f: F) -> Vec<f64>
    where
        F: Fn(f64, f64) -> f64 + Sync,
    {
        let eval = |j: usize| {
            if self.valid[j] {
                f(self.strikes[j], self.log_moneyness[j])
            } else {
                f64::NAN
            }
        };
        if parallel {
            (0..self.len()).into_par_iter().map(eval).collect()
        } else {
            (0..self.len()).map(eval).collect()
        }
    }
}

/// Which formula and evaluation route produced a price.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Backend {
    Classic,
    ClassicAlt,
    Nufft,
    NufftAlt,
}

impl Backend {
    pub const ALL: [Backend; 4] = [
        Backend::Classic,
        Backend::ClassicAlt,
        Backend::Nufft,
        Backend::NufftAlt,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Backend::Classic => "classic",
            Backend::ClassicAlt => "classic-alt",
            Backend::Nufft => "nufft",
            Backend::NufftAlt => "nufft-alt",
        }
    }

    pub fn is_nufft(self) -> bool {
        matches!(self, Backend::Nufft | Backend::NufftAlt)
    }
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Backend {
    type Err = CosError;
    fn from_str(s: &str) -> Result<Self> {
        Backend::ALL
            .into_iter()
            .find(|b| b.name() == s)
            .ok_or_else(|| CosError::UnknownBackend {
                name: s.to_string(),
                available: Backend::ALL.map(Backend::name).join(", "),
            })
    }
}

/// Put and call prices for one strike batch. Invalid strikes carry NaN.
#[derive(Debug, Clone, PartialEq)]
pub struct PriceBatch {
    pub puts: Vec<f64>,
    pub calls: Vec<f64>,
    pub valid: Vec<bool>,
    pub backend: Backend,
}

impl PriceBatch {
    pub(crate) fn from_puts(
        puts: Vec<f64>,
        market: &MarketInputs,
        batch: &StrikeBatch,
        backend: Backend,
    ) -> Self {
        let puts = PriceBatch {
            puts,
            calls: Vec::new(),
            valid: batch.valid().to_vec(),
            backend,
        };
        parity_calls(&puts, market, batch)
    }
}

/// `C_j = P_j + B(T)(F(0,T) - K_j)`.
pub fn parity_calls(puts: &PriceBatch, market: &MarketInputs, batch: &StrikeBatch) -> PriceBatch {
    let calls = puts
        .puts
        .iter()
        .zip(batch.strikes())
        .zip(&puts.valid)
        .map(|((&p, &k), &valid)| {
            if valid {
                p + market.discount() * (market.forward() - k)
            } else {
                f64::NAN
            }
        })
        .collect();
    PriceBatch {
        calls,
        ..puts.clone()
    }
}

/// Characteristic-function part of the strike-factored series, ready to be
/// summed for any number of strikes of the same maturity.
#[derive(Debug, Clone)]
pub struct ClassicSeries {
    range: TruncationRange,
    discount: f64,
    head: f64,
    /// `φ(η_k) e^{-iη_k a} U_k`, `k >= 1`.
    weights: Vec<Complex64>,
    etas: Vec<f64>,
}

impl ClassicSeries {
    pub fn new(
        model: &dyn CharacteristicFunction,
        market: &MarketInputs,
        range: &TruncationRange,
    ) -> Result<Self> {
        check_maturity(market.maturity())?;
        let shifted = shifted_charfn(model, market.maturity(), range);
        let u = put_coefficients(range).values;
        Ok(Self {
            range: *range,
            discount: market.discount(),
            head: 0.5 * shifted[0].re * u[0],
            weights: shifted.iter().zip(&u).skip(1).map(|(c, u)| c * u).collect(),
            etas: (1..range.terms()).map(|k| range.eta(k)).collect(),
        })
    }

    pub fn range(&self) -> &TruncationRange {
        &self.range
    }

    /// `B K [½Re(φ(0))U_0 + Σ Re(φ(η_k) U_k e^{-iη_k(x+a)})]` per valid strike.
    pub fn price_puts(&self, market: &MarketInputs, batch: &StrikeBatch, parallel: bool) -> PriceBatch {
        let puts = batch.map_valid(parallel, |strike, x| {
            let sum: f64 = self
                .weights
                .iter()
                .zip(&self.etas)
                .map(|(w, eta)| {
                    let (sin, cos) = (eta * x).sin_cos();
                    w.re * cos + w.im * sin
                })
                .sum();
            self.discount * strike * (self.head + sum)
        });
        PriceBatch::from_puts(puts, market, batch, Backend::Classic)
    }
}

/// Characteristic-function part of the strike-embedded series.
#[derive(Debug, Clone)]
pub struct ClassicAltSeries {
    range: TruncationRange,
    discount: f64,
    forward: f64,
    re_phi0: f64,
    /// `Re(φ(η_k) e^{-iη_k a})`, `k >= 1`.
    re_shifted: Vec<f64>,
    etas: Vec<f64>,
}

impl ClassicAltSeries {
    pub fn new(
        model: &dyn CharacteristicFunction,
        market: &MarketInputs,
        range: &TruncationRange,
    ) -> Result<Self> {
        check_maturity(market.maturity())?;
        let shifted = shifted_charfn(model, market.maturity(), range);
        Ok(Self {
            range: *range,
            discount: market.discount(),
            forward: market.forward(),
            re_phi0: shifted[0].re,
            re_shifted: shifted.iter().skip(1).map(|c| c.re).collect(),
            etas: (1..range.terms()).map(|k| range.eta(k)).collect(),
        })
    }

    pub fn range(&self) -> &TruncationRange {
        &self.range
    }

    /// `B [½Re(φ(0))V_0(x) + Σ Re(φ(η_k) e^{-iη_k a}) V_k(x)]` per valid strike.
    pub fn price_puts(&self, market: &MarketInputs, batch: &StrikeBatch, parallel: bool) -> PriceBatch {
        let a = self.range.a();
        let width = self.range.width();
        let fwd_exp_a = self.forward * a.exp();
        let puts = batch.map_valid(parallel, |strike, x| {
            let v0 = 2.0 * (fwd_exp_a - strike + strike * (x - a)) / width;
            let sum: f64 = self
                .re_shifted
                .iter()
                .zip(&self.etas)
                .map(|(c, &eta)| {
                    let (sin, cos) = (eta * (x - a)).sin_cos();
                    let vk = 2.0 * (fwd_exp_a - strike * cos - strike * eta * sin)
                        / (width * (1.0 + eta * eta))
                        + 2.0 * strike * sin / (width * eta);
                    c * vk
                })
                .sum();
            self.discount * (0.5 * self.re_phi0 * v0 + sum)
        });
        PriceBatch::from_puts(puts, market, batch, Backend::ClassicAlt)
    }
}

pub fn price_puts_classic(
    model: &dyn CharacteristicFunction,
    market: &MarketInputs,
    range: &TruncationRange,
    batch: &StrikeBatch,
) -> Result<PriceBatch> {
    Ok(ClassicSeries::new(model, market, range)?.price_puts(market, batch, false))
}

pub fn price_puts_classic_alt(
    model: &dyn CharacteristicFunction,
    market: &MarketInputs,
    range: &TruncationRange,
    batch: &StrikeBatch,
) -> Result<PriceBatch> {
    Ok(ClassicAltSeries::new(model, market, range)?.price_puts(market, batch, false))
}
