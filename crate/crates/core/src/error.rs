use thiserror::Error;

/// Errors raised anywhere in the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("precision of {0} bits is below the 64-bit minimum")]
    InvalidPrecision(u32),
    #[error("invalid hypergeometric parameters: {0}")]
    InvalidSpec(String),
    #[error("series did not converge: {0}")]
    NonConvergence(String),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("unsupported hypergeometric family: {0}")]
    UnsupportedFamily(String),
    #[error("asymptotic order {requested} exceeds the available depth {available}")]
    OrderUnavailable { requested: usize, available: usize },
    #[error("argument outside the domain: {0}")]
    DomainError(String),
    #[error("log power {requested} exceeds J_MAX = {max}")]
    RecursionDepthExceeded { requested: usize, max: usize },
    #[error("integration constant could not be fixed: {0}")]
    ConstantDeterminationFailure(String),
    #[error("tolerance not met: wanted {target:e}, achieved {achieved:e} (best value {value})")]
    ToleranceNotMet {
        value: String,
        target: f64,
        achieved: f64,
    },
    #[error("ill-conditioned tail fit: {0}")]
    IllConditionedFit(String),
}

pub type Result<T> = std::result::Result<T, Error>;
