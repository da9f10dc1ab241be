use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("matrix contains non-finite entries")]
    NonFinite,

    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: String, found: String },

    #[error("matrix is not Hermitian: defect {defect:e}")]
    NotHermitian { defect: f64 },

    #[error("trace defect {defect:e} exceeds tolerance")]
    TraceDefect { defect: f64 },

    #[error("negative eigenvalue {value:e} exceeds tolerance")]
    NegativeEigenvalue { value: f64 },

    #[error("level {0} is not one of 1, 2, 3")]
    InvalidLevel(u8),

    #[error("invalid level pair ({0}, {1})")]
    InvalidLevelPair(u8, u8),

    #[error("parameter `{name}` = {value} is outside {domain}")]
    OutOfRange {
        name: &'static str,
        value: f64,
        domain: &'static str,
    },

    #[error("inconsistent asymptotic parameters: t = {t} but 1 - 2x - 2y = {expected}")]
    InconsistentParams { t: f64, expected: f64 },

    #[error(
        "integration unstable at t = {time}: minimum eigenvalue {min_eigenvalue:e}; try a smaller dt"
    )]
    IntegrationUnstable { time: f64, min_eigenvalue: f64 },

    #[error("{0} did not converge")]
    NoConvergence(&'static str),

    #[error("singular matrix in linear solve")]
    Singular,

    #[error("internal error: {0}")]
    Internal(String),

    #[error("invalid state file: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;
