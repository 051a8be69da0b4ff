//! Error type shared across the crate.

/// Errors produced by configuration validation, domain checks, and the
/// numerical kernels.
#[derive(thiserror::Error, Debug, Clone)]
pub enum Error {
    /// Invalid configuration or parameters (rejected before any numerics run).
    #[error("configuration error: {0}")]
    Config(String),

    /// A quantity left its physical or mathematical domain during evaluation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A numerical routine failed to reach its requested accuracy.
    #[error("numerical error: {0}")]
    Numerical(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn numerical(msg: impl Into<String>) -> Self {
        Error::Numerical(msg.into())
    }
}
