use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },

    #[error("`{name}`: {msg}")]
    Semantic { name: String, msg: String },

    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse { .. } | CliError::Semantic { .. } => 3,
            CliError::Io(_) => 1,
        }
    }

    pub fn semantic(name: &str, msg: impl Into<String>) -> Self {
        CliError::Semantic {
            name: name.to_string(),
            msg: msg.into(),
        }
    }
}
