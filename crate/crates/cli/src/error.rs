use std::fmt;

use ldpc_exponent_core::Error;

/// Failures mapped onto the exit-code contract.
#[derive(Debug)]
pub enum CliError {
    /// A verification suite failed (exit 1).
    Verify(String),
    /// Bad flags, unsupported ensemble or unreadable input (exit 2).
    Usage(String),
    /// Exhaustive computation over budget (exit 3).
    Resource(String),
}

impl CliError {
    pub fn code(&self) -> u8 {
        match self {
            CliError::Verify(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Resource(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Verify(m) | CliError::Usage(m) | CliError::Resource(m) => f.write_str(m),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Resource(_) => CliError::Resource(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Usage(format!("i/o error: {e}"))
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Usage(format!("csv error: {e}"))
    }
}
