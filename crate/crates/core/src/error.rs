use thiserror::Error;

/// Errors raised by the toolkit.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("index {index} ≥ dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("dimension {0} is outside the supported range 2..={1}")]
    BadDimension(usize, usize),

    #[error("operator {0} is absent from the signature and not derivable")]
    MissingOperator(String),

    #[error("signature mismatch: {0}")]
    SignatureMismatch(String),

    #[error("malformed input: {0}")]
    Format(String),

    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("unbound variable x{0}")]
    UnboundVariable(usize),

    #[error("budget exceeded: {0}")]
    Budget(String),

    #[error("closure failure: {0}")]
    Closure(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("illegal move: {0}")]
    IllegalMove(String),

    #[error("invariant breach: {0}")]
    Invariant(String),

    #[error("zigzag condition violated: factor {factor} misses world {world}")]
    Zigzag { factor: usize, world: usize },

    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Format(e.to_string())
    }
}
