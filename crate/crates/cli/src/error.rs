use thiserror::Error;

/// Errors that abort a whole run. All map to exit code 2.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),

    #[error("line {line}: {message}")]
    Input { line: usize, message: String },

    #[error("structured input: {0}")]
    Structured(#[from] serde_json::Error),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}
