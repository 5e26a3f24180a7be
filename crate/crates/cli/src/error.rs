use std::path::PathBuf;

use thiserror::Error;

/// Process exit codes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[repr(u8)]
pub enum ExitCode {
    Pass = 0,
    Usage = 1,
    Input = 2,
    Budget = 3,
    Failure = 4,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Parse {
        path: PathBuf,
        source: lcx_core::Error,
    },
    /// A resource limit stopped the run; partial output has been written.
    #[error("{0}")]
    Budget(lcx_core::Error),
    #[error(transparent)]
    Core(lcx_core::Error),
}

impl CliError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }

    pub fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Usage(_) => ExitCode::Usage,
            CliError::Io { .. } | CliError::Parse { .. } => ExitCode::Input,
            CliError::Budget(_) => ExitCode::Budget,
            CliError::Core(lcx_core::Error::Argument(_)) => ExitCode::Usage,
            CliError::Core(lcx_core::Error::Budget { .. }) => ExitCode::Budget,
            CliError::Core(lcx_core::Error::Parse { .. }) => ExitCode::Input,
            CliError::Core(_) => ExitCode::Failure,
        }
    }
}

impl From<lcx_core::Error> for CliError {
    fn from(err: lcx_core::Error) -> Self {
        CliError::Core(err)
    }
}
