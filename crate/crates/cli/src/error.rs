use std::process::ExitCode;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Validation(String),
    #[error("{0}")]
    Exhausted(String),
    #[error("{0}")]
    Verification(String),
    #[error(transparent)]
    Core(#[from] edslab::Error),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(match self {
            CliError::Validation(_) => 2,
            CliError::Exhausted(_) => 3,
            CliError::Verification(_) => 4,
            CliError::Core(edslab::Error::Internal(_)) => 1,
            CliError::Core(_) => 2,
            CliError::Io(_) => 1,
        })
    }
}
