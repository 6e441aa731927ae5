//! Options-per-second measurements, median of repeated timed runs.

use crate::accuracy::registry_for;
use crate::case::BenchCase;
use crate::error::{BenchError, Result};
use cosnufft::{Backend, StrikeBatch};
use rand::seq::SliceRandom;
use rand::{rngs::StdRng, SeedableRng};
use serde::{Deserialize, Serialize};
use std::hint::black_box;
use std::time::{Duration, Instant};

/// What a timed run covers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scope {
    /// Characteristic function, coefficients, plan and pricing.
    EndToEnd,
    /// Pricing a batch with an already prepared pricer.
    EvaluationOnly,
}

impl Scope {
    pub const ALL: [Scope; 2] = [Scope::EndToEnd, Scope::EvaluationOnly];

    pub fn name(self) -> &'static str {
        match self {
            Scope::EndToEnd => "end-to-end",
            Scope::EvaluationOnly => "evaluation-only",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThroughputSettings {
    pub warmup: usize,
    pub repetitions: usize,
    /// Shortest acceptable sample; faster runs are repeated in an inner loop.
    pub min_sample: Duration,
    /// Let the pricers use the rayon pool.
    pub parallel: bool,
    /// Seeds the order in which cells are measured.
    pub seed: u64,
}

impl Default for ThroughputSettings {
    fn default() -> Self {
        Self {
            warmup: 3,
            repetitions: 20,
            min_sample: Duration::from_millis(2),
            parallel: false,
            seed: 0,
        }
    }
}

impl ThroughputSettings {
    pub fn validate(&self) -> Result<()> {
        if self.warmup < 3 {
            return Err(BenchError::Settings(format!("warmup {} < 3", self.warmup)));
        }
        if self.repetitions < 20 {
            return Err(BenchError::Settings(format!("repetitions {} < 20", self.repetitions)));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThroughputResult {
    pub case: String,
    pub backend: Backend,
    pub scope: Scope,
    pub strikes: usize,
    pub threads: usize,
    /// Pricing calls per sample.
    pub inner_loop: usize,
    /// Seconds per pricing call, one per repetition.
    pub samples: Vec<f64>,
    pub median_seconds: f64,
    pub options_per_second: f64,
}

pub fn median(values: &[f64]) -> f64 {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    match v.len() {
        0 => f64::NAN,
        n if n % 2 == 1 => v[n / 2],
        n => 0.5 * (v[n / 2 - 1] + v[n / 2]),
    }
}

/// Times `run` and returns per-call samples and the inner-loop multiplier.
pub fn measure<F: FnMut() -> Result<()>>(settings: &ThroughputSettings, mut run: F) -> Result<(Vec<f64>, usize)> {
    settings.validate()?;
    for _ in 0..settings.warmup {
        run()?;
    }
    let mut inner = 1usize;
    loop {
        let start = Instant::now();
        for _ in 0..inner {
            run()?;
        }
        if start.elapsed() >= settings.min_sample || inner >= 1 << 20 {
            break;
        }
        inner *= 2;
    }
    let mut samples = Vec::with_capacity(settings.repetitions);
    for _ in 0..settings.repetitions {
        let start = Instant::now();
        for _ in 0..inner {
            run()?;
        }
        samples.push(start.elapsed().as_secs_f64() / inner as f64);
    }
    Ok((samples, inner))
}

/// One measured cell of the throughput table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Cell {
    pub backend: Backend,
    pub scope: Scope,
    pub strikes: usize,
}

pub fn cells(case: &BenchCase, counts: &[usize], scopes: &[Scope]) -> Vec<Cell> {
    let mut out = Vec::new();
    for &backend in &case.backends {
        for &scope in scopes {
            for &strikes in counts {
                out.push(Cell { backend, scope, strikes });
            }
        }
    }
    out
}

/// Measures the given cells in a seeded random order; results come back
/// sorted by backend, scope and strike count.
pub fn run_cells(case: &BenchCase, cells: &[Cell], settings: &ThroughputSettings) -> Result<Vec<ThroughputResult>> {
    settings.validate()?;
    case.validate()?;
    let market = case.market()?;
    let range = case.range()?;
    let registry = registry_for(case, settings.parallel);
    let threads = if settings.parallel { rayon::current_num_threads() } else { 1 };
    let mut order: Vec<usize> = (0..cells.len()).collect();
    order.shuffle(&mut StdRng::seed_from_u64(settings.seed));
    let mut results: Vec<Option<ThroughputResult>> = vec![None; cells.len()];
    for i in order {
        let cell = cells[i];
        let backend = registry.backend(cell.backend)?;
        let batch = StrikeBatch::new(case.strikes(cell.strikes), &market, &range)?;
        let (samples, inner_loop) = match cell.scope {
            Scope::EndToEnd => measure(settings, || {
                let pricer = backend.prepare(&case.model, &market, &range)?;
                black_box(pricer.price_puts(black_box(&batch))?);
                Ok(())
            })?,
            Scope::EvaluationOnly => {
                let pricer = backend.prepare(&case.model, &market, &range)?;
                measure(settings, || {
                    black_box(pricer.price_puts(black_box(&batch))?);
                    Ok(())
                })?
            }
        };
        let median_seconds = median(&samples);
        results[i] = Some(ThroughputResult {
            case: case.name.clone(),
            backend: cell.backend,
            scope: cell.scope,
            strikes: cell.strikes,
            threads,
            inner_loop,
            samples,
            median_seconds,
            options_per_second: cell.strikes as f64 / median_seconds,
        });
    }
    let mut results: Vec<ThroughputResult> = results.into_iter().flatten().collect();
    results.sort_by_key(|r| (r.backend.name(), r.scope, r.strikes));
    Ok(results)
}

/// Every backend, scope and strike count of `case`.
pub fn run_throughput(case: &BenchCase, counts: &[usize], settings: &ThroughputSettings) -> Result<Vec<ThroughputResult>> {
    run_cells(case, &cells(case, counts, &Scope::ALL), settings)
}
