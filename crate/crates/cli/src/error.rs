use thiserror::Error;
use uniopt::critical::CriticalError;
use uniopt::{ModelError, OptimizeError, ParseError};

use crate::plot::PlotError;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("solver failure: {0}")]
    Solver(String),
    #[error("cannot write {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Parse(_) | CliError::Io { .. } => 1,
            CliError::Solver(_) => 2,
        }
    }
}

impl From<OptimizeError> for CliError {
    fn from(err: OptimizeError) -> Self {
        match err {
            OptimizeError::InvalidInterval { .. } | OptimizeError::InvalidOptions(_) => CliError::Usage(err.to_string()),
            other => CliError::Solver(other.to_string()),
        }
    }
}

impl From<ModelError> for CliError {
    fn from(err: ModelError) -> Self {
        match err {
            ModelError::Invalid(msg) => CliError::Usage(msg),
            ModelError::Solve(inner) => inner.into(),
        }
    }
}

impl From<CriticalError> for CliError {
    fn from(err: CriticalError) -> Self {
        match err {
            CriticalError::PreconditionViolation(msg) => CliError::Usage(msg),
            CriticalError::Fault(fault) => CliError::Solver(fault.to_string()),
        }
    }
}

impl From<PlotError> for CliError {
    fn from(err: PlotError) -> Self {
        CliError::Solver(err.to_string())
    }
}
