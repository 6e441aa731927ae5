//! COS pricing through one type-2 NUFFT per strike batch.
//!
//! The strike-factored series becomes `P_j = B K_j Re f̂_j` with
//! `f_k = φ(η_k) e^{-iη_k a} U_k` for `k = 1..M-1`, `f_0 = ½φ(0)U_0`, zero
//! negative modes and points `x_j/(2(b-a))`. The strike-embedded series
//! splits `V_k(x)` into a strike-independent constant plus both signs of `k`,
//! sampled at `(x_j - a)/(2(b-a)) ∈ [0, 1/2)`. In both cases `N = 2M`.

use crate::charfn::{check_maturity, CharacteristicFunction};
use crate::cosclassic::{Backend, PriceBatch, StrikeBatch};
use crate::cosrange::{put_coefficients, shifted_charfn, vk_split_terms, TruncationRange};
use crate::error::Result;
use crate::market::MarketInputs;
use crate::nufft::{check_points, NufftOptions, NufftPlan, Spectrum};
use num_complex::Complex64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PointMapping {
    /// `x/(2(b-a))`
    Classic,
    /// `(x-a)/(2(b-a))`
    Alt,
}

/// Strike-independent input of the NUFFT pricer for one maturity.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralCoefficients {
    pub spectrum: Spectrum,
    /// Strike-independent part of the strike-embedded price; zero for the
    /// strike-factored path.
    pub residual_constant: Complex64,
    pub mapping: PointMapping,
    range: TruncationRange,
    phi_zero: Complex64,
}

impl SpectralCoefficients {
    pub fn range(&self) -> &TruncationRange {
        &self.range
    }

    pub fn backend(&self) -> Backend {
        match self.mapping {
            PointMapping::Classic => Backend::Nufft,
            PointMapping::Alt => Backend::NufftAlt,
        }
    }

    /// NUFFT sample point of a log-moneyness, reduced into `[-1/2, 1/2)`.
    /// The transform is 1-periodic in the point, so the reduction only
    /// matters when `0 ∉ (a, b)` on the strike-factored path.
    pub fn sample_point(&self, x: f64) -> f64 {
        let scale = 0.5 / self.range.width();
        let y = match self.mapping {
            PointMapping::Classic => x * scale,
            PointMapping::Alt => (x - self.range.a()) * scale,
        };
        y - (y + 0.5).floor()
    }
}

pub fn assemble_classic(
    model: &dyn CharacteristicFunction,
    market: &MarketInputs,
    range: &TruncationRange,
) -> Result<SpectralCoefficients> {
    check_maturity(market.maturity())?;
    let m = range.terms() as i64;
    let shifted = shifted_charfn(model, market.maturity(), range);
    let u = put_coefficients(range).values;
    let mut spectrum = Spectrum::zeros(2 * range.terms())?;
    spectrum.set(0, 0.5 * shifted[0] * u[0]);
    for k in 1..m {
        spectrum.set(k, shifted[k as usize] * u[k as usize]);
    }
    Ok(SpectralCoefficients {
        spectrum,
        residual_constant: Complex64::new(0.0, 0.0),
        mapping: PointMapping::Classic,
        range: *range,
        phi_zero: shifted[0],
    })
}

pub fn assemble_alt(
    model: &dyn CharacteristicFunction,
    market: &MarketInputs,
    range: &TruncationRange,
) -> Result<SpectralCoefficients> {
    check_maturity(market.maturity())?;
    let m = range.terms() as i64;
    let shifted = shifted_charfn(model, market.maturity(), range);
    let split = vk_split_terms(range);
    // f_0 = f_{-N/2} = 0; negative modes run from -(M-1) to -1.
    let mut spectrum = Spectrum::zeros(2 * range.terms())?;
    let mut residual = shifted[0] * split.residuals[0];
    for k in 1..m {
        let (c, factor) = (shifted[k as usize], split.factors[k as usize]);
        spectrum.set(k, c * factor);
        spectrum.set(-k, c * factor.conj());
        residual += c * split.residuals[k as usize];
    }
    Ok(SpectralCoefficients {
        spectrum,
        residual_constant: market.forward() * residual,
        mapping: PointMapping::Alt,
        range: *range,
        phi_zero: shifted[0],
    })
}

/// Prices every valid strike of `batch` with one type-2 NUFFT.
pub fn price_puts_nufft(
    coeffs: &SpectralCoefficients,
    market: &MarketInputs,
    batch: &StrikeBatch,
    options: &NufftOptions,
) -> Result<PriceBatch> {
    let valid: Vec<usize> = (0..batch.len()).filter(|&j| batch.valid()[j]).collect();
    let points: Vec<f64> = valid
        .iter()
        .map(|&j| coeffs.sample_point(batch.log_moneyness()[j]))
        .collect();
    check_points(&points)?;
    let plan = NufftPlan::with_options(&points, coeffs.spectrum.modes(), *options)?;
    let transformed = plan.execute_type2(&coeffs.spectrum)?;

    let discount = market.discount();
    let inv_width = 1.0 / coeffs.range.width();
    let mut puts = vec![f64::NAN; batch.len()];
    for ((&j, &y), f) in valid.iter().zip(&points).zip(&transformed) {
        let strike = batch.strikes()[j];
        puts[j] = match coeffs.mapping {
            PointMapping::Classic => discount * strike * f.re,
            PointMapping::Alt => {
                let affine = strike * coeffs.phi_zero * (2.0 * y - inv_width);
                discount * (affine + strike * f + coeffs.residual_constant).re
            }
        };
    }
    Ok(PriceBatch::from_puts(puts, market, batch, coeffs.backend()))
}
