use thiserror::Error;

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("unknown problem {name:?}; known problems: {}", suggestions.join(", "))]
    UnknownProblem { name: String, suggestions: Vec<String> },
    #[error("unknown transform {name:?}; known transforms: {}", suggestions.join(", "))]
    UnknownTransform { name: String, suggestions: Vec<String> },
    #[error("configuration error: {0}")]
    Config(String),
    #[error("fixture mismatch: {0}")]
    FixtureMismatch(String),
    #[error(transparent)]
    Core(#[from] seqaccel::Error),
    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
    #[error("CSV error: {0}")]
    Csv(#[from] csv::Error),
    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("config file error: {0}")]
    Toml(#[from] toml::de::Error),
}

impl BenchError {
    /// Process exit code: 2 for configuration and input problems.
    pub fn exit_code(&self) -> i32 {
        2
    }
}
