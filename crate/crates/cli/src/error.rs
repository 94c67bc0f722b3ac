use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigError {
    #[error("line {line}: malformed `{text}`: {reason}")]
    Malformed { line: usize, text: String, reason: String },
    #[error("line {line}: unknown key `{key}` for {command}")]
    Unknown {
        key: String,
        line: usize,
        command: &'static str,
    },
    #[error("line {line}: duplicate key `{key}` (first set on line {first})")]
    Duplicate { key: String, line: usize, first: usize },
    #[error("{command} is missing required keys: {}", keys.join(", "))]
    Missing {
        command: &'static str,
        keys: Vec<&'static str>,
    },
    #[error("line {line}: `{key}` is in {expected}, got unit `{found}`")]
    UnitMismatch {
        key: String,
        line: usize,
        expected: &'static str,
        found: String,
    },
    #[error("line {line}: bad value for `{key}`: {reason}")]
    BadValue { key: String, line: usize, reason: String },
    #[error("`{key}`: {reason}")]
    Invalid { key: &'static str, reason: String },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config: {0}")]
    Config(#[from] ConfigError),
    #[error("{0}")]
    Model(#[from] gravbec::Error),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}
