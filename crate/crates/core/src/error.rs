use thiserror::Error;

/// Errors produced anywhere in the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },

    #[error("validation error: {0}")]
    Validation(String),

    #[error("matrix is singular: {0}")]
    Singular(String),

    #[error("map does not fix the target tensor: {0}")]
    NotFixing(String),

    #[error("algorithm does not verify: {0}")]
    Unverified(String),

    #[error("group closure exceeded the cap of {cap} elements")]
    ClosureCap { cap: usize },

    #[error("element {element} maps member {member} outside the member set")]
    NotInvariant { element: usize, member: usize },

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("coefficient {0} cannot act on this ring")]
    Coefficient(String),

    #[error("i/o error on {path}: {message}")]
    Io { path: String, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn dim(msg: impl Into<String>) -> Self {
        Error::Dimension(msg.into())
    }

    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn parse(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            location: location.into(),
            message: message.into(),
        }
    }
}
