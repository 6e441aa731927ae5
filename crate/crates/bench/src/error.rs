use thiserror::Error;

#[derive(Debug, Error)]
pub enum BenchError {
    #[error(transparent)]
    Pricing(#[from] cosnufft::CosError),
    #[error("unknown case `{name}`; available: {available}")]
    UnknownCase { name: String, available: String },
    #[error("case {case}: strike {strike} lies outside the truncation range")]
    StrikeOutsideRange { case: String, strike: f64 },
    #[error("case {case}: reference failed: {reason}")]
    Reference { case: String, reason: String },
    #[error("invalid throughput settings: {0}")]
    Settings(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = BenchError> = std::result::Result<T, E>;
