use thiserror::Error;

/// Errors reported by the kernel.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("arity mismatch: {left} vs {right} variables")]
    ArityMismatch { left: usize, right: usize },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("not a chain map: {0}")]
    NotChainMap(String),

    #[error("not a cocycle")]
    NotCocycle,

    #[error("input is not graded: {0}")]
    Ungraded(String),

    #[error("invalid sequence: {0}")]
    InvalidSequence(String),

    #[error("index {index} out of range (limit {limit})")]
    IndexOutOfRange { index: usize, limit: usize },

    #[error("contraction needs a positive form degree")]
    ZeroFormDegree,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("undeclared name `{0}`")]
    Undeclared(String),

    #[error("{0}")]
    Semantic(String),
}

impl Error {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
