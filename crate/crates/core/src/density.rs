//! Log-return density from the cosine series,
//! `f(x) ≈ Σ' (2/(b-a)) Re(φ(η_k) e^{-iη_k a}) cos(η_k (x-a))`.
//!
//! The NUFFT route samples `(x - a)/(2(b-a))` with real coefficients on the
//! non-negative modes, so one transform serves any number of points.

use crate::charfn::{check_maturity, CharacteristicFunction};
use crate::cosrange::{density_coefficients, shifted_charfn, TruncationRange};
use crate::error::Result;
use crate::nufft::{NufftOptions, NufftPlan, Spectrum};
use num_complex::Complex64;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DensityEvaluation {
    Direct,
    Nufft(NufftOptions),
}

#[derive(Debug, Clone, PartialEq)]
pub struct DensityBatch {
    pub points: Vec<f64>,
    /// NaN where the point lies outside `[a, b]`.
    pub values: Vec<f64>,
    pub valid: Vec<bool>,
}

/// Density of `ln(F(T,T)/F(0,T))` at each point of `[a, b]`.
pub fn reconstruct_density(
    model: &dyn CharacteristicFunction,
    maturity: f64,
    range: &TruncationRange,
    points: &[f64],
    evaluation: DensityEvaluation,
) -> Result<DensityBatch> {
    check_maturity(maturity)?;
    let coeffs: Vec<f64> = shifted_charfn(model, maturity, range)
        .iter()
        .zip(density_coefficients(range))
        .enumerate()
        .map(|(k, (c, d))| if k == 0 { 0.5 * d * c.re } else { d * c.re })
        .collect();
    let valid: Vec<bool> = points
        .iter()
        .map(|&x| x >= range.a() && x <= range.b())
        .collect();
    let inside: Vec<f64> = points
        .iter()
        .zip(&valid)
        .filter(|(_, &v)| v)
        .map(|(&x, _)| x)
        .collect();

    let inside_values: Vec<f64> = match evaluation {
        DensityEvaluation::Direct => inside
            .iter()
            .map(|&x| {
                coeffs
                    .iter()
                    .enumerate()
                    .map(|(k, c)| c * (range.eta(k) * (x - range.a())).cos())
                    .sum()
            })
            .collect(),
        DensityEvaluation::Nufft(options) => {
            let m = range.terms() as i64;
            let mut spectrum = Spectrum::zeros(2 * range.terms())?;
            for k in 0..m {
                spectrum.set(k, Complex64::new(coeffs[k as usize], 0.0));
            }
            let scale = 0.5 / range.width();
            let samples: Vec<f64> = inside
                .iter()
                .map(|&x| {
                    let y = (x - range.a()) * scale;
                    y - (y + 0.5).floor()
                })
                .collect();
            NufftPlan::with_options(&samples, spectrum.modes(), options)?
                .execute_type2(&spectrum)?
                .iter()
                .map(|v| v.re)
                .collect()
        }
    };

    let mut values = vec![f64::NAN; points.len()];
    let mut it = inside_values.into_iter();
    for (v, &ok) in values.iter_mut().zip(&valid) {
        if ok {
            *v = it.next().expect("one value per valid point");
        }
    }
    Ok(DensityBatch {
        points: points.to_vec(),
        values,
        valid,
    })
}
