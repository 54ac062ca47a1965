use lqu_core::LquError;
use std::process::ExitCode;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Bad flags, config or state; exit code 2.
    #[error("{0}")]
    Validation(String),
    /// The optimizer failed on a grid point; exit code 3.
    #[error("optimizer failure: {0}")]
    Optimizer(String),
    /// An optimized value fell below its lower bound; exit code 4.
    #[error("soundness violation: {0}")]
    Soundness(String),
    #[error("io error: {0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(match self {
            Self::Validation(_) | Self::Io(_) => 2,
            Self::Optimizer(_) => 3,
            Self::Soundness(_) => 4,
        })
    }
}

impl From<LquError> for CliError {
    fn from(e: LquError) -> Self {
        Self::Validation(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        Self::Io(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        Self::Io(e.to_string())
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
