//! Crate-wide error type.

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// Invalid quantum numbers or arguments outside the mathematical domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// Matrix or vector shapes do not match.
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    Dimension { expected: usize, actual: usize },

    /// Sphere grid cannot integrate the requested spherical-harmonic degree.
    #[error("grid bandlimit {actual} is below the required degree {required}")]
    Bandlimit { required: usize, actual: usize },

    /// A stated precondition of the operation was violated.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// An adaptive quadrature failed to reach its tolerance.
    #[error("quadrature did not converge: {0}")]
    NonConvergence(String),

    /// A log-domain magnitude left the representable float range.
    #[error("overflow: {0}")]
    Overflow(String),

    /// Malformed input file.
    #[error("invalid format: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}
