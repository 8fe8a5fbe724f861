use std::io;

use thiserror::Error;

/// CLI failure; `exit_code` maps it to the process status.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("config key '{key}': {message}")]
    Config { key: String, message: String },
    #[error(transparent)]
    Invalid(#[from] robust_scan::Error),
    #[error("no usable rows")]
    NoUsableRows,
    #[error("I/O error: {0}")]
    Io(#[from] io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::NoUsableRows => 3,
            CliError::Io(_) => 1,
            _ => 2,
        }
    }

    pub(crate) fn config(key: &str, message: impl Into<String>) -> Self {
        CliError::Config { key: key.to_string(), message: message.into() }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
