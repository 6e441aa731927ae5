//! European option pricing with the COS method.
//!
//! The cosine series can be summed per strike ([`cosclassic`]) or, for many
//! strikes of one maturity, rewritten as a type-2 non-uniform FFT
//! ([`nufftpricer`] on top of [`nufft`]). Both the strike-factored and the
//! strike-embedded forms of the put series are available through either
//! route; [`backend::BackendRegistry`] exposes the four combinations by name.

pub mod backend;
pub mod charfn;
pub mod cosclassic;
pub mod cosrange;
pub mod density;
pub mod error;
pub mod market;
pub mod nufft;
pub mod nufftpricer;

pub use backend::{BackendRegistry, BackendSettings, Evaluation, Formula, PreparedPricer, PricingBackend};
pub use charfn::{BlackScholes, CharacteristicFunction, Cumulants, Heston, ModelParams, VarianceGamma};
pub use cosclassic::{parity_calls, price_puts_classic, price_puts_classic_alt, Backend, PriceBatch, StrikeBatch};
pub use cosrange::TruncationRange;
pub use density::{reconstruct_density, DensityBatch, DensityEvaluation};
pub use error::{CosError, Result};
pub use market::MarketInputs;
pub use nufft::{nudft_direct, NufftOptions, NufftPlan, Spectrum};
pub use nufftpricer::{assemble_alt, assemble_classic, price_puts_nufft, PointMapping, SpectralCoefficients};
