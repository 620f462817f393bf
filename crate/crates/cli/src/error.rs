use foldy_core::FoldyError;
use thiserror::Error;

/// Errors that end a run with exit code 2.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("config: {0}")]
    Config(String),
    #[error("cannot write {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error(transparent)]
    Core(#[from] FoldyError),
}
