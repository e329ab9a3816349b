use thiserror::Error;

/// Errors raised across the library. Each variant maps to a CLI exit code.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("not a symmetric quiver: {0}")]
    NotSymmetric(String),
    #[error("not of tame type: {0}")]
    NotTame(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("verification failed: {0}")]
    Verification(String),
}

impl Error {
    /// 1 for malformed input, 2 for violated preconditions, 3 for failed checks.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Malformed(_) => 1,
            Error::NotSymmetric(_) | Error::NotTame(_) | Error::Unsupported(_) | Error::Precondition(_) => 2,
            Error::Verification(_) => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
