//! Error type shared by every module in the crate.

use thiserror::Error;

/// Failure modes for the numerical routines.
///
/// `InvalidArgument` covers precondition violations (a caller error),
/// the remaining variants are genuine numerical non-convergence.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("iteration cap of {cap} terms reached while {context}")]
    IterationCap { cap: usize, context: String },

    #[error("quadrature could not meet the error budget {budget:e} (estimated error {achieved:e})")]
    QuadratureBudget { budget: f64, achieved: f64 },

    #[error("eigenvalue iteration did not converge after {iterations} sweeps")]
    EigNonConvergence { iterations: usize },

    #[error("residual {residual:e} exceeds the requested tolerance {tol:e}")]
    ResidualTooLarge { residual: f64, tol: f64 },

    #[error("value not representable in binary64: {0}")]
    Overflow(String),
}

impl Error {
    /// True when the error is a caller mistake rather than a numerical failure.
    pub fn is_argument_error(&self) -> bool {
        matches!(self, Error::InvalidArgument(_) | Error::Overflow(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
