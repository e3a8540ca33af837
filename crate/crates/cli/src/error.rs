use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("invalid field: {0}")]
    Field(String),

    #[error(transparent)]
    Core(#[from] factorlab_core::Error),

    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

impl CliError {
    /// 2 for parse and validation problems, 3 when a search budget ran out.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(factorlab_core::Error::SearchBudgetExceeded { .. }) => 3,
            _ => 2,
        }
    }
}
