use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error(transparent)]
    Pricing(#[from] cosnufft::CosError),
    #[error(transparent)]
    Bench(#[from] cosnufft_bench::BenchError),
    #[error("{0}: {1}")]
    Io(String, std::io::Error),
    #[error("no valid strikes: every strike lies outside the truncation range")]
    NoValidStrikes,
    #[error("{0}")]
    Usage(String),
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;
