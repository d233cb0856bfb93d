//! Error type for copula construction, sampling, and exact evaluation.

/// Errors raised by the copula laboratory.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum LabError {
    /// A family parameter lies outside its admissible range.
    #[error("invalid {family} parameter: {reason}")]
    InvalidParameter {
        family: &'static str,
        reason: String,
    },
    /// Copula dimension below the family's minimum.
    #[error("{family} requires dimension at least {min}, got {got}")]
    DimensionTooSmall {
        family: &'static str,
        min: usize,
        got: usize,
    },
    /// Kendall's tau outside the invertible range of the family.
    #[error("tau {tau} outside the open interval (0, 1)")]
    TauOutOfRange { tau: f64 },
    /// Exact evaluation is not available for this family/measure pair.
    #[error("no exact evaluation for {family} under {measure}")]
    UnsupportedExact {
        family: &'static str,
        measure: &'static str,
    },
    /// A candidate polynomial failed the copula checks.
    #[error("polynomial is not a copula: {reason}")]
    NotACopula { reason: String },
    /// A sampled density value exceeded the precomputed rejection bound,
    /// which signals a bad polynomial specification.
    #[error("density {value} exceeds the rejection bound {bound}")]
    RejectionBoundExceeded { value: f64, bound: f64 },
    /// Monte Carlo oracle called with too small a sample.
    #[error("oracle needs at least {min} observations, got {got}")]
    OracleSampleTooSmall { min: usize, got: usize },
    /// Errors propagated from the estimator crate.
    #[error(transparent)]
    Core(#[from] copula_cluster::Error),
}

pub type Result<T> = std::result::Result<T, LabError>;
