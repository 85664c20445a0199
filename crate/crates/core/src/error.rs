use thiserror::Error;

/// Errors raised by the analytic and simulation routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// A numeric routine failed to converge or produced non-finite values.
    #[error("numeric error: {msg}")]
    Numeric {
        msg: String,
        /// Best iterate reached before giving up, if any.
        best: Option<Vec<f64>>,
    },
    /// The requested computation exceeds the exhaustive-enumeration budget.
    #[error("resource limit exceeded: {0}")]
    Resource(String),
    /// The ensemble is not supported by the requested operation.
    #[error("unsupported ensemble: {0}")]
    Unsupported(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn numeric(msg: impl Into<String>) -> Self {
        Error::Numeric {
            msg: msg.into(),
            best: None,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
