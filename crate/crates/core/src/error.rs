use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq)]
pub enum CosError {
    /// A model or market parameter violates its domain.
    #[error("invalid parameter {name} = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("degenerate truncation range: a = b = {0} (all cumulants used by the rule are zero)")]
    DegenerateRange(f64),

    #[error("invalid truncation range [{a}, {b}] with {terms} terms")]
    InvalidRange { a: f64, b: f64, terms: usize },

    #[error("sample point {index} = {value} lies outside [-1/2, 1/2)")]
    PointOutOfRange { index: usize, value: f64 },

    #[error("size mismatch: expected {expected}, got {actual}")]
    SizeMismatch { expected: usize, actual: usize },

    #[error("transform size {0} must be even and positive")]
    OddTransformSize(usize),

    #[error("NUFFT tolerance {0} outside [1e-16, 1e-4]")]
    InvalidTolerance(f64),

    #[error("oversampling factor {0} must be at least 2")]
    InvalidOversampling(f64),

    #[error("strike {index} = {value} must be positive and finite")]
    InvalidStrike { index: usize, value: f64 },

    #[error("unknown backend {name:?}; available: {available}")]
    UnknownBackend { name: String, available: String },
}

pub type Result<T, E = CosError> = std::result::Result<T, E>;

pub(crate) fn positive(name: &'static str, value: f64) -> Result<()> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(CosError::InvalidParameter {
            name,
            value,
            reason: "must be positive and finite",
        })
    }
}
