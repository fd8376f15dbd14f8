//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A value or structure violates a shape requirement (dimension mismatch,
    /// unknown variant, bad argument).
    #[error("structural error: {0}")]
    Structural(String),

    /// A loaded or constructed value breaks a documented invariant.
    #[error("validation error: {0}")]
    Validation(String),

    /// Outcome-space enumeration would exceed the configured cap.
    #[error("outcome space has {outcomes} outcomes, exceeding the cap of {cap}")]
    Capacity { outcomes: u128, cap: u64 },

    /// A call broke an operation's precondition.
    #[error("contract error: {0}")]
    Contract(String),

    /// A numeric argument is outside the operation's domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// Malformed input file.
    #[error("parse error in {path}: {detail}")]
    Parse { path: String, detail: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True for errors caused by bad input rather than by the environment.
    /// The CLI maps these to exit code 1, everything else to 2.
    pub fn is_input_error(&self) -> bool {
        !matches!(self, Error::Io(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
