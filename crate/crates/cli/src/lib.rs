//! Library side of the `cosnufft` command: configuration and command bodies.

pub mod commands;
pub mod config;
pub mod error;

pub use commands::{density_csv, price_batch, price_csv};
pub use config::{CosSection, Grid, MarketSection, RunConfig, SCHEMA_VERSION};
pub use error::{CliError, Result};
