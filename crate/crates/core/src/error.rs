use crate::check::CheckReport;
use thiserror::Error;

/// Crate-wide error type.
///
/// Mathematical *failures* (an operator that is not Reynolds, a datum that is
/// not a cocycle, …) are not errors: validators report them as
/// [`CheckReport`]s so callers can inspect residuals. `Error` is reserved for
/// contract violations — mismatched shapes, malformed input, or an operation
/// invoked on data that does not satisfy its documented preconditions.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimMismatch(String),

    #[error("invalid structure: {0}")]
    InvalidStructure(String),

    #[error("precondition `{what}` failed:\n{report}")]
    Precondition { what: String, report: CheckReport },

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn dim(msg: impl Into<String>) -> Self {
        Error::DimMismatch(msg.into())
    }

    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidStructure(msg.into())
    }

    pub fn precondition(what: impl Into<String>, report: CheckReport) -> Self {
        Error::Precondition {
            what: what.into(),
            report,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
