use num_complex::Complex64;
use thiserror::Error;

/// Errors produced by the numerical routines.
///
/// `AccuracyLoss` is special: it carries the best value obtained together
/// with the error estimate, so callers that can live with reduced accuracy
/// may still use the result.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("gamma pole at non-positive integer {0}")]
    GammaPole(f64),

    #[error("accuracy loss: best value {value}, estimated error {estimate:.3e} > tolerance {tol:.3e}")]
    AccuracyLoss {
        value: Complex64,
        estimate: f64,
        tol: f64,
    },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("singular point: {0}")]
    Singularity(String),

    #[error("quadrature did not converge: {0}")]
    QuadratureFailure(String),

    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    #[error("matrix not positive semidefinite (Cholesky failed after jitter retry)")]
    NotPositiveSemidefinite,

    #[error("series diverged: {0}")]
    Divergence(String),

    #[error("domain violation: {0}")]
    DomainViolation(String),

    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    /// Best value carried by an `AccuracyLoss`, if that is what this is.
    pub fn best_value(&self) -> Option<Complex64> {
        match self {
            Error::AccuracyLoss { value, .. } => Some(*value),
            _ => None,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
