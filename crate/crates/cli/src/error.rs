use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("numerical failure: {0}")]
    Numerical(cavity_entanglement::Error),
    #[error("{0} validation check(s) failed")]
    Validation(usize),
    #[error("cannot write {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) | CliError::Io { .. } => 1,
            CliError::Numerical(_) | CliError::Validation(_) => 2,
        }
    }
}

impl From<cavity_entanglement::Error> for CliError {
    fn from(err: cavity_entanglement::Error) -> Self {
        match err {
            cavity_entanglement::Error::InvalidParameter(msg) => CliError::Config(msg),
            other => CliError::Numerical(other),
        }
    }
}
