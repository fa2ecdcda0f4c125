use thiserror::Error;

/// Errors raised across the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("division by the zero polynomial")]
    ZeroDivisor,

    #[error("cannot parse rational from {0:?}: expected \"p/q\" or an integer")]
    RationalParse(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("shape mismatch: expected {expected} coordinates, got {got}")]
    ShapeMismatch { expected: usize, got: usize },

    #[error("point lies outside the domain")]
    OutsideDomain,

    #[error("argument out of range: {0}")]
    OutOfRange(String),

    #[error("quadrature did not reach tolerance after {subdivisions} subdivisions (error estimate {error:e})")]
    QuadratureTolerance { subdivisions: usize, error: f64 },

    #[error("integrand returned a non-finite value at {0}")]
    NonFinite(f64),

    #[error("no sign change on bracket [{lo}, {hi}]")]
    NoSignChange { lo: f64, hi: f64 },

    #[error("matrix is not Hermitian (deviation {0:e})")]
    NotHermitian(f64),

    #[error("operator is singular or ill-conditioned (condition estimate {0:e})")]
    Singular(f64),

    #[error("function evaluation failed at a stencil point: {0}")]
    Evaluation(String),

    #[error("operation not supported: {0}")]
    Unsupported(String),
}

impl Error {
    /// True when the error stems from the caller's input rather than a numerical failure.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::RationalParse(_)
                | Error::InvalidParameter(_)
                | Error::ShapeMismatch { .. }
                | Error::OutsideDomain
                | Error::OutOfRange(_)
                | Error::Unsupported(_)
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
