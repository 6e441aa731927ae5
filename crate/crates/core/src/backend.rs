//! Pricing backends behind one trait, registered by name.
//!
//! Each backend splits pricing into a strike-independent `prepare` step
//! (characteristic function, payoff coefficients, spectrum) and a per-batch
//! evaluation, so one prepared pricer serves every strike batch of a maturity.

use crate::charfn::CharacteristicFunction;
use crate::cosclassic::{Backend, ClassicAltSeries, ClassicSeries, PriceBatch, StrikeBatch};
use crate::cosrange::TruncationRange;
use crate::error::{CosError, Result};
use crate::market::MarketInputs;
use crate::nufft::NufftOptions;
use crate::nufftpricer::{assemble_alt, assemble_classic, price_puts_nufft, SpectralCoefficients};
use serde::{Deserialize, Serialize};
use std::sync::Arc;

/// Strike-factored (`U_k`) or strike-embedded (`V_k(x)`) series.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Formula {
    Classic,
    Alt,
}

/// Per-strike summation or one NUFFT per batch.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Evaluation {
    Direct,
    Nufft,
}

impl Backend {
    pub fn from_parts(formula: Formula, evaluation: Evaluation) -> Self {
        match (formula, evaluation) {
            (Formula::Classic, Evaluation::Direct) => Backend::Classic,
            (Formula::Alt, Evaluation::Direct) => Backend::ClassicAlt,
            (Formula::Classic, Evaluation::Nufft) => Backend::Nufft,
            (Formula::Alt, Evaluation::Nufft) => Backend::NufftAlt,
        }
    }
}

pub trait PreparedPricer: Send + Sync {
    fn price_puts(&self, batch: &StrikeBatch) -> Result<PriceBatch>;
}

pub trait PricingBackend: Send + Sync {
    fn backend(&self) -> Backend;

    fn name(&self) -> &'static str {
        self.backend().name()
    }

    fn prepare(
        &self,
        model: &dyn CharacteristicFunction,
        market: &MarketInputs,
        range: &TruncationRange,
    ) -> Result<Box<dyn PreparedPricer>>;

    fn price_puts(
        &self,
        model: &dyn CharacteristicFunction,
        market: &MarketInputs,
        range: &TruncationRange,
        batch: &StrikeBatch,
    ) -> Result<PriceBatch> {
        self.prepare(model, market, range)?.price_puts(batch)
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct ClassicBackend {
    pub parallel: bool,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct ClassicAltBackend {
    pub parallel: bool,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct NufftBackend {
    pub options: NufftOptions,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct NufftAltBackend {
    pub options: NufftOptions,
}

struct PreparedClassic {
    series: ClassicSeries,
    market: MarketInputs,
    parallel: bool,
}

impl PreparedPricer for PreparedClassic {
    fn price_puts(&self, batch: &StrikeBatch) -> Result<PriceBatch> {
        Ok(self.series.price_puts(&self.market, batch, self.parallel))
    }
}

struct PreparedClassicAlt {
    series: ClassicAltSeries,
    market: MarketInputs,
    parallel: bool,
}

impl PreparedPricer for PreparedClassicAlt {
    fn price_puts(&self, batch: &StrikeBatch) -> Result<PriceBatch> {
        Ok(self.series.price_puts(&self.market, batch, self.parallel))
    }
}

struct PreparedNufft {
    coeffs: SpectralCoefficients,
    market: MarketInputs,
    options: NufftOptions,
}

impl PreparedPricer for PreparedNufft {
    fn price_puts(&self, batch: &StrikeBatch) -> Result<PriceBatch> {
        price_puts_nufft(&self.coeffs, &self.market, batch, &self.options)
    }
}

impl PricingBackend for ClassicBackend {
    fn backend(&self) -> Backend {
        Backend::Classic
    }

    fn prepare(
        &self,
        model: &dyn CharacteristicFunction,
        market: &MarketInputs,
        range: &TruncationRange,
    ) -> Result<Box<dyn PreparedPricer>> {
        Ok(Box::new(PreparedClassic {
            series: ClassicSeries::new(model, market, range)?,
            market: *market,
            parallel: self.parallel,
        }))
    }
}

impl PricingBackend for ClassicAltBackend {
    fn backend(&self) -> Backend {
        Backend::ClassicAlt
    }

    fn prepare(
        &self,
        model: &dyn CharacteristicFunction,
        market: &MarketInputs,
        range: &TruncationRange,
    ) -> Result<Box<dyn PreparedPricer>> {
        Ok(Box::new(PreparedClassicAlt {
            series: ClassicAltSeries::new(model, market, range)?,
            market: *market,
            parallel: self.parallel,
        }))
    }
}

impl PricingBackend for NufftBackend {
    fn backend(&self) -> Backend {
        Backend::Nufft
    }

    fn prepare(
        &self,
        model: &dyn CharacteristicFunction,
        market: &MarketInputs,
        range: &TruncationRange,
    ) -> Result<Box<dyn PreparedPricer>> {
        Ok(Box::new(PreparedNufft {
            coeffs: assemble_classic(model, market, range)?,
            market: *market,
            options: self.options,
        }))
    }
}

impl PricingBackend for NufftAltBackend {
    fn backend(&self) -> Backend {
        Backend::NufftAlt
    }

    fn prepare(
        &self,
        model: &dyn CharacteristicFunction,
        market: &MarketInputs,
        range: &TruncationRange,
    ) -> Result<Box<dyn PreparedPricer>> {
        Ok(Box::new(PreparedNufft {
            coeffs: assemble_alt(model, market, range)?,
            market: *market,
            options: self.options,
        }))
    }
}

/// Settings shared by the default backends.
#[derive(Debug, Clone, Copy, Default)]
pub struct BackendSettings {
    pub nufft: NufftOptions,
    /// Spread strikes (classic) or sample points (NUFFT) over the rayon pool.
    pub parallel: bool,
}

/// Name → backend lookup, in registration order.
#[derive(Clone, Default)]
pub struct BackendRegistry {
    entries: Vec<Arc<dyn PricingBackend>>,
}

impl BackendRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    /// `classic`, `classic-alt`, `nufft` and `nufft-alt`.
    pub fn with_defaults(settings: BackendSettings) -> Self {
        let nufft = NufftOptions {
            parallel: settings.parallel,
            ..settings.nufft
        };
        let mut registry = Self::new();
        registry.register(Arc::new(ClassicBackend {
            parallel: settings.parallel,
        }));
        registry.register(Arc::new(ClassicAltBackend {
            parallel: settings.parallel,
        }));
        registry.register(Arc::new(NufftBackend { options: nufft }));
        registry.register(Arc::new(NufftAltBackend { options: nufft }));
        registry
    }

    /// Adds a backend, replacing any registered under the same name.
    pub fn register(&mut self, backend: Arc<dyn PricingBackend>) {
        self.entries.retain(|b| b.name() != backend.name());
        self.entries.push(backend);
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.entries.iter().map(|b| b.name()).collect()
    }

    pub fn get(&self, name: &str) -> Result<Arc<dyn PricingBackend>> {
        self.entries
            .iter()
            .find(|b| b.name() == name)
            .cloned()
            .ok_or_else(|| CosError::UnknownBackend {
                name: name.to_string(),
                available: self.names().join(", "),
            })
    }

    pub fn backend(&self, backend: Backend) -> Result<Arc<dyn PricingBackend>> {
        self.get(backend.name())
    }
}
