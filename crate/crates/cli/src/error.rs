use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Lib(#[from] fibsum::Error),
    #[error("{0}")]
    Usage(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
    /// A verification suite found a counterexample.
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Lib(e) if e.is_invariant() => 2,
            CliError::Failed(_) => 2,
            CliError::Usage(_) => 64,
            CliError::Lib(_) | CliError::Io(_) | CliError::Json(_) => 1,
        }
    }
}
