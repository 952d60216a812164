use std::io;
use std::path::PathBuf;

use thiserror::Error;

/// Exit code for I/O failures.
pub const EXIT_IO: i32 = 1;
/// Exit code for usage and validation failures.
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Domain(#[from] smoothq::Error),
    #[error("{path}: line {line}: cannot parse {text:?} as a finite decimal number")]
    Parse {
        path: PathBuf,
        line: usize,
        text: String,
    },
    #[error("{path}: no observations")]
    EmptyInput { path: PathBuf },
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("writing output: {0}")]
    Output(#[from] io::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } | CliError::Output(_) | CliError::Csv(_) | CliError::Json(_) => EXIT_IO,
            CliError::Usage(_)
            | CliError::Domain(_)
            | CliError::Parse { .. }
            | CliError::EmptyInput { .. } => EXIT_USAGE,
        }
    }
}
