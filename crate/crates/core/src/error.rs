use alloc::string::String;
use core::fmt;

/// Errors raised by constructors and guarded enumerations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed input or a violated precondition.
    Input(String),
    /// An enumeration or construction would exceed its size guard.
    Guard { what: &'static str, limit: usize },
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub fn is_guard(&self) -> bool {
        matches!(self, Error::Guard { .. })
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Input(msg) => write!(f, "invalid input: {msg}"),
            Error::Guard { what, limit } => {
                write!(f, "{what} exceeds the configured guard of {limit}")
            }
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
