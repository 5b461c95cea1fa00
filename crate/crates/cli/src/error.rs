use std::path::PathBuf;

use thiserror::Error;

/// A spec or config problem pinned to a position in its file.
#[derive(Debug, Clone, PartialEq, Error)]
#[error("{origin}:{line}:{column}: {field}: {detail}")]
pub struct ParseError {
    pub origin: String,
    pub line: usize,
    pub column: usize,
    pub field: String,
    pub detail: String,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot access {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },

    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("invalid run configuration {field}: {detail}")]
    Config { field: String, detail: String },

    #[error(transparent)]
    Core(#[from] smalleig::Error),
}

pub(crate) fn io(path: impl Into<PathBuf>) -> impl FnOnce(std::io::Error) -> CliError {
    let path = path.into();
    move |source| CliError::Io { path, source }
}
