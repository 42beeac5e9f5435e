use serde::Serialize;
use thiserror::Error;

use crate::series::EvalResult;

#[derive(Debug, Clone, Error, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Error {
    #[error("parameter out of domain: {0}")]
    Domain(String),

    #[error("series did not reach the requested tolerance within {terms} terms")]
    Truncation { terms: usize, partial: EvalResult },

    #[error("geometric majorant diverges: ratio {ratio} >= 1")]
    DivergentMajorant { ratio: f64 },

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("ill-conditioned computation: {0}; retry with exact rational arithmetic")]
    Conditioning(String),

    #[error("function is too close to zero on |z| = {radius} (min {min_modulus:e}, error bound {error_bound:e})")]
    ZeroOnCircle {
        radius: f64,
        min_modulus: f64,
        error_bound: f64,
    },

    #[error("discriminant {discriminant} is nonnegative, the roots are real")]
    RealRoots { discriminant: f64 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("internal consistency check failed: {0}")]
    InternalConsistency(String),

    #[error("predicate `{predicate}` is not monotone on the probe grid")]
    MonotonicityViolation { predicate: String, scan: Vec<(f64, bool)> },

    #[error("invalid tolerance {0}")]
    InvalidTolerance(f64),
}

impl Error {
    /// Stable snake_case name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Domain(_) => "domain",
            Error::Truncation { .. } => "truncation",
            Error::DivergentMajorant { .. } => "divergent_majorant",
            Error::InsufficientData(_) => "insufficient_data",
            Error::Conditioning(_) => "conditioning",
            Error::ZeroOnCircle { .. } => "zero_on_circle",
            Error::RealRoots { .. } => "real_roots",
            Error::Precondition(_) => "precondition",
            Error::InternalConsistency(_) => "internal_consistency",
            Error::MonotonicityViolation { .. } => "monotonicity_violation",
            Error::InvalidTolerance(_) => "invalid_tolerance",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
