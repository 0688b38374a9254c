//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A caller-supplied value is outside its documented domain.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Parameters are individually valid but combine into a quantity with no
    /// defined value (for example a zero likelihood denominator). The message
    /// identifies the offending branch or term.
    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    /// A formula requires dividing by a quantity that is zero here.
    #[error("division domain: {0}")]
    DivisionDomain(String),

    /// Configuration file could not be parsed or is internally inconsistent.
    #[error("config: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub fn degenerate(msg: impl Into<String>) -> Self {
        Error::DegenerateInput(msg.into())
    }
}
