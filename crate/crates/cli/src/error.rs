use std::path::PathBuf;

use thiserror::Error;

pub type CliResult<T> = Result<T, CliError>;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] dcent_core::Error),

    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },

    #[error("config: {0}")]
    Config(String),

    #[error("{0}")]
    Usage(String),
}

impl CliError {
    /// 2 for malformed input, 3 for oracle size guards, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) if e.is_parse() => 2,
            CliError::Core(e) if e.is_guard() => 3,
            CliError::Config(_) => 2,
            _ => 1,
        }
    }
}
