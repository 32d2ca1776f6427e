use expcone_core::CoreError;
use expcone_sim::SimError;
use std::path::PathBuf;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{field}: {message}")]
    Field { field: String, message: String },
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error(transparent)]
    Sim(#[from] SimError),
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl CliError {
    pub fn field(field: impl Into<String>, message: impl std::fmt::Display) -> Self {
        CliError::Field {
            field: field.into(),
            message: message.to_string(),
        }
    }

    /// `2` for malformed invocations and configs, `1` for everything the
    /// mathematics or the file system rejects.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Field { .. } => 2,
            CliError::Core(
                CoreError::UnsupportedFamily(_)
                | CoreError::InvalidRank { .. }
                | CoreError::IndexOutOfRange { .. }
                | CoreError::DimensionMismatch { .. },
            ) => 2,
            CliError::Sim(SimError::InvalidSpec(_) | SimError::UnsupportedDimension(_)) => 2,
            CliError::Core(_) | CliError::Sim(_) | CliError::Io { .. } => 1,
        }
    }
}
