//! Command bodies. Each returns the CSV text so it can be written anywhere.

use crate::config::RunConfig;
use crate::error::{CliError, Result};
use cosnufft::{
    reconstruct_density, BackendRegistry, BackendSettings, DensityEvaluation, Evaluation, NufftOptions, PriceBatch,
    StrikeBatch,
};
use std::fmt::Write as _;

/// 17 significant digits, so values round-trip exactly.
pub fn num(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn price_batch(config: &RunConfig, parallel: bool) -> Result<(StrikeBatch, PriceBatch)> {
    let market = config.market()?;
    let range = config.range()?;
    let batch = StrikeBatch::new(config.strikes(), &market, &range)?;
    let registry = BackendRegistry::with_defaults(BackendSettings {
        nufft: NufftOptions::with_tolerance(config.cos.tolerance),
        parallel,
    });
    let prices = registry
        .backend(config.backend())?
        .price_puts(&config.model, &market, &range, &batch)?;
    Ok((batch, prices))
}

/// `strike,put,call,valid,backend`; fails when no strike is valid.
pub fn price_csv(config: &RunConfig, parallel: bool) -> Result<String> {
    let (batch, prices) = price_batch(config, parallel)?;
    if !batch.is_empty() && batch.valid_count() == 0 {
        return Err(CliError::NoValidStrikes);
    }
    let mut out = String::from("strike,put,call,valid,backend\n");
    for j in 0..batch.len() {
        writeln!(
            out,
            "{},{},{},{},{}",
            num(batch.strikes()[j]),
            num(prices.puts[j]),
            num(prices.calls[j]),
            prices.valid[j],
            prices.backend
        )
        .unwrap();
    }
    Ok(out)
}

/// `x,density,valid` at the configured points.
pub fn density_csv(config: &RunConfig, parallel: bool) -> Result<String> {
    let range = config.range()?;
    let evaluation = match config.cos.backend {
        Evaluation::Direct => DensityEvaluation::Direct,
        Evaluation::Nufft => DensityEvaluation::Nufft(NufftOptions {
            parallel,
            ..NufftOptions::with_tolerance(config.cos.tolerance)
        }),
    };
    let points = config.density_points();
    let mut out = String::from("x,density,valid\n");
    if points.is_empty() {
        return Ok(out);
    }
    let d = reconstruct_density(&config.model, config.maturity, &range, &points, evaluation)?;
    for j in 0..d.points.len() {
        writeln!(out, "{},{},{}", num(d.points[j]), num(d.values[j]), d.valid[j]).unwrap();
    }
    Ok(out)
}
