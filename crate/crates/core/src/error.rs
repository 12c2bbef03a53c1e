use thiserror::Error;

/// Errors raised by group computations.
///
/// The variants are grouped the way the command line reports them: input
/// problems, capability limits, refusals of unsupported questions, and
/// internal invariant violations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("element {0} is not in the group")]
    NotInGroup(String),

    #[error("capability error: {0}")]
    Capability(String),

    #[error("refused: {0}")]
    Refused(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    pub fn parse(offset: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            offset,
            message: message.into(),
        }
    }

    pub fn capability(message: impl Into<String>) -> Self {
        Error::Capability(message.into())
    }

    pub fn invalid(message: impl Into<String>) -> Self {
        Error::Invalid(message.into())
    }

    /// Process exit code used by the command line for this error.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. }
            | Error::DegreeMismatch { .. }
            | Error::Invalid(_)
            | Error::NotInGroup(_) => 2,
            Error::Capability(_) | Error::Refused(_) => 3,
            Error::Internal(_) => 4,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
