//! Put-price errors of each backend against the case reference.

use crate::case::BenchCase;
use crate::error::{BenchError, Result};
use crate::reference::reference_puts;
use cosnufft::{Backend, BackendRegistry, BackendSettings, NufftOptions, StrikeBatch};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AccuracyResult {
    pub case: String,
    pub backend: Backend,
    pub reference: String,
    pub strikes: usize,
    pub rmse: f64,
    /// Largest absolute error over the grid.
    pub max_abs: f64,
    /// Mean absolute error over the grid.
    pub mean_abs: f64,
}

/// RMSE, max and mean absolute difference.
pub fn error_stats(prices: &[f64], reference: &[f64]) -> (f64, f64, f64) {
    if prices.is_empty() {
        return (0.0, 0.0, 0.0);
    }
    let n = prices.len() as f64;
    let (mut sq, mut max, mut abs) = (0.0, 0.0f64, 0.0);
    for (p, r) in prices.iter().zip(reference) {
        let e = (p - r).abs();
        sq += e * e;
        abs += e;
        max = max.max(e);
    }
    ((sq / n).sqrt(), max, abs / n)
}

pub fn registry_for(case: &BenchCase, parallel: bool) -> BackendRegistry {
    BackendRegistry::with_defaults(BackendSettings {
        nufft: NufftOptions::with_tolerance(case.tolerance),
        parallel,
    })
}

/// Errors of every backend of `case` over `strike_count` strikes.
pub fn run_accuracy(case: &BenchCase, strike_count: usize) -> Result<Vec<AccuracyResult>> {
    case.validate()?;
    let strikes = case.strikes(strike_count);
    let reference = reference_puts(case, &strikes)?;
    accuracy_against(case, &strikes, &reference)
}

/// As [`run_accuracy`], with reference prices already computed.
pub fn accuracy_against(case: &BenchCase, strikes: &[f64], reference: &[f64]) -> Result<Vec<AccuracyResult>> {
    let market = case.market()?;
    let range = case.range()?;
    let batch = StrikeBatch::new(strikes.to_vec(), &market, &range)?;
    if batch.valid_count() != strikes.len() {
        return Err(BenchError::StrikeOutsideRange {
            case: case.name.clone(),
            strike: strikes[batch.valid().iter().position(|v| !v).unwrap_or(0)],
        });
    }
    let registry = registry_for(case, false);
    case.backends
        .iter()
        .map(|&backend| {
            let prices = registry.backend(backend)?.price_puts(&case.model, &market, &range, &batch)?;
            let (rmse, max_abs, mean_abs) = error_stats(&prices.puts, reference);
            Ok(AccuracyResult {
                case: case.name.clone(),
                backend,
                reference: case.reference.label(),
                strikes: strikes.len(),
                rmse,
                max_abs,
                mean_abs,
            })
        })
        .collect()
}
