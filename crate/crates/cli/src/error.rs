use std::path::Path;
use std::process::ExitCode;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("verification failed: {0}")]
    Verify(String),
    #[error("input error: {0}")]
    Input(String),
    #[error("configuration error: {0}")]
    Config(String),
    #[error("I/O error on {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(match self {
            CliError::Verify(_) => 1,
            CliError::Input(_) => 2,
            CliError::Config(_) => 3,
            CliError::Io { .. } => 4,
        })
    }

    pub fn io(path: &Path, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.display().to_string(),
            source,
        }
    }
}

/// Library errors surfacing here are either bad configurations or bad
/// operands.
impl From<unified_ntt::Error> for CliError {
    fn from(e: unified_ntt::Error) -> Self {
        use unified_ntt::Error as E;
        match e {
            E::Config(_) | E::Geometry(_) | E::InvalidDepth(_) | E::Hazard { .. } => {
                CliError::Config(e.to_string())
            }
            other => CliError::Input(other.to_string()),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
