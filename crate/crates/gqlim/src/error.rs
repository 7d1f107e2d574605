//! Error taxonomy shared by every module.
//!
//! The variants map onto the two failure classes the CLI distinguishes:
//! input/validation problems (`Domain`, `Config`, `InvalidEnvironment`,
//! `Unsupported`, `Io`) and numerical problems (`NumericalFailure`,
//! `Truncation`).

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The surrounding medium is not a dielectric (e.g. a conducting
    /// environment permittivity where a finite one is required).
    #[error("invalid environment: {0}")]
    InvalidEnvironment(String),

    /// The operation is well-posed but deliberately not provided for this
    /// input (e.g. a loss spectrum of a perfect conductor).
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// Malformed or inconsistent run configuration.
    #[error("config error: {0}")]
    Config(String),

    /// An iterative numerical method failed to converge or bracket.
    #[error("numerical failure: {0}")]
    NumericalFailure(String),

    /// A truncated-space computation leaked more probability than allowed.
    #[error("truncation error: {0}")]
    Truncation(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code the CLI uses for this error class:
    /// 2 for input/validation problems, 3 for numerical ones.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Domain(_)
            | Error::InvalidEnvironment(_)
            | Error::Unsupported(_)
            | Error::Config(_)
            | Error::Io(_) => 2,
            Error::NumericalFailure(_) | Error::Truncation(_) => 3,
        }
    }
}
