use thiserror::Error;

/// Everything that ends a run with exit code 2.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {source_name}: {message}")]
    Io { source_name: String, message: String },
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("{path}: {message}")]
    Semantic { path: String, message: String },
    #[error(transparent)]
    Core(#[from] pcoact_core::Error),
}

impl CliError {
    pub fn semantic(path: impl Into<String>, message: impl Into<String>) -> Self {
        CliError::Semantic { path: path.into(), message: message.into() }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
