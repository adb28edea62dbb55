use thiserror::Error;

/// Harness-level failures, mapped onto process exit codes by `main`:
/// config/parse problems exit 2, numeric failures exit 3, consistency-guard
/// violations exit 4.
#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("config error: {0}")]
    Config(String),
    #[error("numeric failure: {0}")]
    Numeric(String),
    #[error("consistency guard violated: {0}")]
    Consistency(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl HarnessError {
    pub fn exit_code(&self) -> i32 {
        match self {
            HarnessError::Config(_) => 2,
            HarnessError::Numeric(_) => 3,
            HarnessError::Consistency(_) => 4,
            HarnessError::Io(_) => 1,
        }
    }
}
