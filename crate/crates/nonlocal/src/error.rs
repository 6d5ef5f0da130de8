use nonlocal_core::Error as CoreError;

pub type CliResult<T> = Result<T, CliError>;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{file}:{line}:{column}: {message}")]
    Parse {
        file: String,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{path}: {message}")]
    Invalid { path: String, message: String },
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] CoreError),
}

impl CliError {
    /// Resource caps exit with 3, everything else with 1.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(
                CoreError::SearchSpaceTooLarge { .. }
                | CoreError::TableTooLarge { .. }
                | CoreError::DimensionTooLarge { .. },
            ) => 3,
            _ => 1,
        }
    }
}
