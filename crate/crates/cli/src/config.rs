//! TOML run configuration.
//!
//! ```toml
//! schema_version = 1
//! maturity = 1.0
//!
//! [model]
//! name = "variance-gamma"
//! theta = -0.1436
//! nu = 0.3
//! sigma = 0.12136
//!
//! [market]            # or: forward = ..., discount = ...
//! spot = 100.0
//! rate = 0.1
//! dividend = 0.0
//!
//! [cos]
//! truncation_level = 10.0
//! terms = 128
//! formula = "classic"  # or "alt"
//! backend = "nufft"    # or "direct"
//! tolerance = 1e-9
//!
//! [strikes]           # or: values = [90.0, 100.0]
//! min = 60.0
//! max = 140.0
//! count = 100
//! spacing = "uniform" # or "log-uniform"
//!
//! [density]           # or: min, max, count
//! points = [-0.1, 0.0, 0.1]
//! ```

use crate::error::{CliError, Result};
use cosnufft::{Backend, Evaluation, Formula, MarketInputs, ModelParams, TruncationRange};
use cosnufft_bench::{strike_grid, Spacing};
use serde::{Deserialize, Serialize};
use std::path::Path;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub schema_version: u32,
    pub maturity: f64,
    pub model: ModelParams,
    pub market: MarketSection,
    pub cos: CosSection,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub strikes: Option<Grid>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub density: Option<Grid>,
}

/// Exactly one of the two market parameterizations.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged, try_from = "RawMarket")]
pub enum MarketSection {
    Forward { forward: f64, discount: f64 },
    Spot { spot: f64, rate: f64, dividend: f64 },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMarket {
    forward: Option<f64>,
    discount: Option<f64>,
    spot: Option<f64>,
    rate: Option<f64>,
    dividend: Option<f64>,
}

impl TryFrom<RawMarket> for MarketSection {
    type Error = String;
    fn try_from(m: RawMarket) -> std::result::Result<Self, String> {
        let forward_set = m.forward.is_some() || m.discount.is_some();
        let spot_set = m.spot.is_some() || m.rate.is_some() || m.dividend.is_some();
        match (forward_set, spot_set) {
            (true, false) => match (m.forward, m.discount) {
                (Some(forward), Some(discount)) => Ok(MarketSection::Forward { forward, discount }),
                _ => Err("market needs both `forward` and `discount`".into()),
            },
            (false, true) => match m.spot {
                Some(spot) => Ok(MarketSection::Spot {
                    spot,
                    rate: m.rate.unwrap_or(0.0),
                    dividend: m.dividend.unwrap_or(0.0),
                }),
                None => Err("market needs `spot` (with optional `rate` and `dividend`)".into()),
            },
            (true, true) => Err("market mixes {forward, discount} with {spot, rate, dividend}; give one".into()),
            (false, false) => Err("market needs {forward, discount} or {spot, rate, dividend}".into()),
        }
    }
}

fn default_formula() -> Formula {
    Formula::Classic
}

fn default_evaluation() -> Evaluation {
    Evaluation::Nufft
}

fn default_tolerance() -> f64 {
    1e-9
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CosSection {
    pub truncation_level: f64,
    pub terms: usize,
    #[serde(default = "default_formula")]
    pub formula: Formula,
    #[serde(default = "default_evaluation")]
    pub backend: Evaluation,
    #[serde(default = "default_tolerance")]
    pub tolerance: f64,
}

/// Explicit values or an evenly spaced grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged, deny_unknown_fields)]
pub enum Grid {
    Values {
        #[serde(alias = "points")]
        values: Vec<f64>,
    },
    Range {
        min: f64,
        max: f64,
        count: usize,
        #[serde(default)]
        spacing: Spacing,
    },
}

impl Grid {
    pub fn values(&self) -> Vec<f64> {
        match self {
            Grid::Values { values } => values.clone(),
            Grid::Range {
                min,
                max,
                count,
                spacing,
            } => strike_grid(*min, *max, *count, *spacing),
        }
    }
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let config: RunConfig = toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))?;
        config.validate()?;
        Ok(config)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(path.display().to_string(), e))?;
        Self::parse(&text).map_err(|e| match e {
            CliError::Config(msg) => CliError::Config(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    pub fn to_toml(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| CliError::Config(e.to_string()))
    }

    fn validate(&self) -> Result<()> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(CliError::Config(format!(
                "unsupported schema_version {}; expected {SCHEMA_VERSION}",
                self.schema_version
            )));
        }
        self.market()?;
        self.range()?;
        Ok(())
    }

    pub fn market(&self) -> Result<MarketInputs> {
        Ok(match self.market {
            MarketSection::Forward { forward, discount } => MarketInputs::new(forward, discount, self.maturity)?,
            MarketSection::Spot { spot, rate, dividend } => {
                MarketInputs::from_spot(spot, rate, dividend, self.maturity)?
            }
        })
    }

    pub fn range(&self) -> Result<TruncationRange> {
        Ok(TruncationRange::for_model(
            &self.model,
            self.maturity,
            self.cos.truncation_level,
            self.cos.terms,
        )?)
    }

    pub fn backend(&self) -> Backend {
        Backend::from_parts(self.cos.formula, self.cos.backend)
    }

    pub fn strikes(&self) -> Vec<f64> {
        self.strikes.as_ref().map(Grid::values).unwrap_or_default()
    }

    pub fn density_points(&self) -> Vec<f64> {
        self.density.as_ref().map(Grid::values).unwrap_or_default()
    }
}
