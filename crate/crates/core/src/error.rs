use thiserror::Error;

/// Errors raised by root-system construction, character evaluation and the
/// spectral engine.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("configuration error: {0}")]
    Config(String),

    #[error("structural error: {0}")]
    Structural(String),

    #[error("capacity exceeded: {what} requires {required}, cap is {cap}")]
    Capacity {
        what: String,
        required: String,
        cap: String,
    },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("point is singular ({degenerate} degenerate positive roots); use char_singular")]
    SingularPoint { degenerate: usize },

    #[error("snap to singular stratum failed: {0}")]
    SnapFailed(String),

    #[error("parse error in {field}: {message}")]
    Parse { field: String, message: String },
}

impl Error {
    pub(crate) fn capacity(
        what: impl Into<String>,
        required: impl ToString,
        cap: impl ToString,
    ) -> Self {
        Error::Capacity {
            what: what.into(),
            required: required.to_string(),
            cap: cap.to_string(),
        }
    }

    pub(crate) fn parse(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            field: field.into(),
            message: message.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
