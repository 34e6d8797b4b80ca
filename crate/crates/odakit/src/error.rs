use thiserror::Error;

/// Failures that stop a command before it can produce a report.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("resource guard exceeded: {what} (limit {limit}); set ODAKIT_GUARD to raise it")]
    Guard { what: String, limit: usize },
}

impl CliError {
    pub fn input(msg: impl Into<String>) -> Self {
        CliError::Input(msg.into())
    }

    /// 2 for guards, 3 for bad input.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Guard { .. } => 2,
            CliError::Input(_) => 3,
        }
    }
}

impl From<odakit_core::Error> for CliError {
    fn from(e: odakit_core::Error) -> Self {
        match e {
            odakit_core::Error::Guard { what, limit } => CliError::Guard { what: what.to_string(), limit },
            other => CliError::Input(other.to_string()),
        }
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;
