//! Truncation range selection and Fourier-cosine payoff coefficients.

use crate::charfn::{CharacteristicFunction, Cumulants};
use crate::error::{CosError, Result};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Log-return interval `[a, b]` and the number of cosine terms `M`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TruncationRange {
    a: f64,
    b: f64,
    terms: usize,
    level: Option<f64>,
}

impl TruncationRange {
    /// `[c1 - L√(|c2| + √|c4|), c1 + L√(|c2| + √|c4|)]`.
    pub fn from_cumulants(c: &Cumulants, level: f64, terms: usize) -> Result<Self> {
        if !(level.is_finite() && level > 0.0) {
            return Err(CosError::InvalidParameter {
                name: "truncation_level",
                value: level,
                reason: "must be positive and finite",
            });
        }
        let half = level * (c.c2.abs() + c.c4.abs().sqrt()).sqrt();
        if half == 0.0 {
            return Err(CosError::DegenerateRange(c.c1));
        }
        let mut range = Self::explicit(c.c1 - half, c.c1 + half, terms)?;
        range.level = Some(level);
        Ok(range)
    }

    pub fn for_model(
        model: &dyn CharacteristicFunction,
        maturity: f64,
        level: f64,
        terms: usize,
    ) -> Result<Self> {
        Self::from_cumulants(&crate::charfn::cumulants(model, maturity)?, level, terms)
    }

    /// A range given directly by its bounds, with no truncation level.
    pub fn explicit(a: f64, b: f64, terms: usize) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && a < b && terms >= 2) {
            return Err(CosError::InvalidRange { a, b, terms });
        }
        Ok(Self {
            a,
            b,
            terms,
            level: None,
        })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    /// Number of cosine terms `M`.
    pub fn terms(&self) -> usize {
        self.terms
    }

    pub fn level(&self) -> Option<f64> {
        self.level
    }

    pub fn width(&self) -> f64 {
        self.b - self.a
    }

    /// Cosine frequency `η_k = kπ/(b-a)`.
    #[inline]
    pub fn eta(&self, k: usize) -> f64 {
        k as f64 * PI / self.width()
    }

    /// Whether a log-moneyness lies strictly inside `(a, b)`.
    pub fn contains(&self, x: f64) -> bool {
        x > self.a && x < self.b
    }
}

/// `φ(η_k) e^{-iη_k a}` for `k = 0..M`, shared by every backend.
pub fn shifted_charfn(
    model: &dyn CharacteristicFunction,
    maturity: f64,
    range: &TruncationRange,
) -> Vec<Complex64> {
    let etas: Vec<f64> = (0..range.terms()).map(|k| range.eta(k)).collect();
    let mut values = model.eval_batch(maturity, &etas);
    for (v, eta) in values.iter_mut().zip(&etas).skip(1) {
        *v *= Complex64::from_polar(1.0, -eta * range.a());
    }
    values
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PayoffKind {
    PutClassic,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PayoffCoefficients {
    pub values: Vec<f64>,
    pub kind: PayoffKind,
}

/// Put payoff coefficients `U_k`, strike factored out.
pub fn put_coefficients(range: &TruncationRange) -> PayoffCoefficients {
    let (a, width) = (range.a(), range.width());
    let scale = 2.0 / width;
    let exp_a = a.exp();
    let mut values = Vec::with_capacity(range.terms());
    values.push(scale * (exp_a - 1.0 - a));
    for k in 1..range.terms() {
        let eta = range.eta(k);
        let (sin, cos) = (eta * a).sin_cos();
        values.push(scale * ((exp_a + eta * sin - cos) / (1.0 + eta * eta) - sin / eta));
    }
    PayoffCoefficients {
        values,
        kind: PayoffKind::PutClassic,
    }
}

/// Strike-independent pieces of the strike-embedded put coefficients `V_k(x)`.
#[derive(Debug, Clone, PartialEq)]
pub struct VkSplitTerms {
    /// `(-1 - iη_k)/((b-a)(1+η_k²)) + i/((b-a)η_k)` for `k >= 1`; entry 0 is zero.
    pub factors: Vec<Complex64>,
    /// `2e^a/((b-a)(1+η_k²))` for `k >= 1`; entry 0 holds the halved
    /// `k = 0` contribution `e^a/(b-a)`. Multiplied by the forward at pricing.
    pub residuals: Vec<f64>,
}

pub fn vk_split_terms(range: &TruncationRange) -> VkSplitTerms {
    let width = range.width();
    let exp_a = range.a().exp();
    let mut factors = Vec::with_capacity(range.terms());
    let mut residuals = Vec::with_capacity(range.terms());
    factors.push(Complex64::new(0.0, 0.0));
    residuals.push(exp_a / width);
    for k in 1..range.terms() {
        let eta = range.eta(k);
        let denom = width * (1.0 + eta * eta);
        factors.push(Complex64::new(-1.0 / denom, -eta / denom + 1.0 / (width * eta)));
        residuals.push(2.0 * exp_a / denom);
    }
    VkSplitTerms { factors, residuals }
}

/// Density reconstruction coefficients; `2/(b-a)` for every term.
pub fn density_coefficients(range: &TruncationRange) -> Vec<f64> {
    vec![2.0 / range.width(); range.terms()]
}
