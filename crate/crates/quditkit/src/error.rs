//! Crate-wide error type.
//!
//! Three failure classes cover everything the library can reject: malformed
//! input (files, JSON, CSV, digit strings), shape disagreements (wrong site
//! count, wrong matrix size, out-of-range digits), and numeric checks that
//! fail (a matrix that should be unitary is not, an eigensolve that should
//! converge does not). The CLI maps them to distinct exit codes so scripts can
//! tell "you gave me garbage" from "your matrix is bad".

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Input could not be read or parsed.
    #[error("parse error: {0}")]
    Parse(String),

    /// Shapes disagree: site counts, matrix dimensions, digit ranges.
    #[error("dimension error: {0}")]
    Dimension(String),

    /// A numeric validation failed (non-unitary matrix, residual too large,
    /// eigensolver did not converge, ...).
    #[error("numeric error: {0}")]
    Numeric(String),
}

impl Error {
    /// Process exit code used by the command-line tool.
    /// 0 is success, 1 is reserved for panics.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_) => 2,
            Error::Dimension(_) => 3,
            Error::Numeric(_) => 4,
        }
    }

    pub fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }

    pub fn dimension(msg: impl Into<String>) -> Self {
        Error::Dimension(msg.into())
    }

    pub fn numeric(msg: impl Into<String>) -> Self {
        Error::Numeric(msg.into())
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Parse(format!("io: {e}"))
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(format!("json: {e}"))
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Parse(format!("csv: {e}"))
    }
}
