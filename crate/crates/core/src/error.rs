use thiserror::Error;

/// Errors raised by the library. Checkers never return these for content
/// violations; they report through [`crate::projection::CheckReport`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed or out-of-range input.
    #[error("input error: {0}")]
    Input(String),

    /// A documented precondition of an operation was violated.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// An instance failed a structural property an algorithm relies on.
    /// The witness lists the offending vertex ids.
    #[error("structural error: {message} (witness {witness:?})")]
    Structural {
        message: String,
        witness: Vec<usize>,
    },

    /// A height family left the finite box its closure is allowed to occupy.
    #[error("model violation: {0}")]
    ModelViolation(String),

    /// A configurable resource cap was hit.
    #[error("{what} cap exceeded (limit {limit})")]
    CapExceeded { what: &'static str, limit: usize },

    /// Text-format parse failure with a 1-based location.
    #[error("line {line}, column {column}: {message}{}", hint.as_ref().map(|h| format!(" (hint: {h})")).unwrap_or_default())]
    Parse {
        line: usize,
        column: usize,
        message: String,
        hint: Option<String>,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn structural(message: impl Into<String>, witness: Vec<usize>) -> Self {
        Error::Structural {
            message: message.into(),
            witness,
        }
    }
}
