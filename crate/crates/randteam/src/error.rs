use randteam_core::Error as CoreError;

#[derive(Debug, thiserror::Error)]
pub enum RunError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Solver(#[from] CoreError),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("serialization: {0}")]
    Format(String),
}

impl RunError {
    /// 1 for bad input, 2 for solver failures.
    pub fn exit_code(&self) -> u8 {
        match self {
            RunError::Config(_) => 1,
            RunError::Solver(e) => match e {
                CoreError::Parse(_)
                | CoreError::OutOfRange { .. }
                | CoreError::DimensionMismatch { .. }
                | CoreError::IndexOutOfBounds { .. }
                | CoreError::NotADistribution { .. }
                | CoreError::DuplicateOutcome
                | CoreError::NotSymmetric { .. }
                | CoreError::InvalidStructure(_)
                | CoreError::InvalidGame(_) => 1,
                _ => 2,
            },
            RunError::Io(_) | RunError::Format(_) => 2,
        }
    }
}

impl From<serde_json::Error> for RunError {
    fn from(e: serde_json::Error) -> Self {
        RunError::Config(e.to_string())
    }
}

impl From<csv::Error> for RunError {
    fn from(e: csv::Error) -> Self {
        RunError::Format(e.to_string())
    }
}

pub type Result<T, E = RunError> = std::result::Result<T, E>;
