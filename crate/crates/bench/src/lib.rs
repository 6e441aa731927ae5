//! Accuracy and throughput harness for the cosnufft pricers.
//!
//! Cases live in a [`CaseRegistry`]; [`run_suite`] prices each against its
//! reference, times every backend over a range of strike counts, checks the
//! accuracy bounds and [`emit_report`] writes the tables.

pub mod accuracy;
pub mod case;
pub mod error;
pub mod reference;
pub mod report;
pub mod suite;
pub mod throughput;

pub use accuracy::{error_stats, run_accuracy, AccuracyResult};
pub use case::{strike_grid, BenchCase, CaseRegistry, ReferenceSpec, Spacing, STRIKE_COUNTS};
pub use error::{BenchError, Result};
pub use reference::{black_put, classic_sum, reference_puts};
pub use report::emit_report;
pub use suite::{check_bounds, paper_bounds, run_suite, AccuracyBound, AssertionOutcome, Metric, SuiteOptions, SuiteReport};
pub use throughput::{run_cells, run_throughput, Cell, Scope, ThroughputResult, ThroughputSettings};
