use thiserror::Error;

/// Errors raised while reading QCF circuit text.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    /// 1-based source line.
    pub line: usize,
    pub message: String,
}

impl ParseError {
    pub(crate) fn new(line: usize, message: impl Into<String>) -> Self {
        Self { line, message: message.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("{what} supports at most {max} qubits, got {requested}")]
    Capacity { what: &'static str, requested: usize, max: usize },

    #[error("circuit widths differ: {left} vs {right}")]
    WidthMismatch { left: usize, right: usize },

    #[error("index {label} has dimension {left} in one tensor and {right} in the other")]
    DimensionMismatch { label: usize, left: usize, right: usize },

    #[error("invalid contraction plan: {0}")]
    Plan(String),

    #[error("invalid gate: {0}")]
    InvalidGate(String),

    #[error("invalid basis state: {0}")]
    InvalidBasis(String),

    #[error("invalid angle: {0}")]
    InvalidAngle(String),

    #[error("invalid ZX-diagram: {0}")]
    InvalidDiagram(String),

    #[error("method {0} cannot be used here")]
    UnsupportedMethod(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn capacity(what: &'static str, requested: usize, max: usize) -> Result<()> {
    if requested > max {
        Err(Error::Capacity { what, requested, max })
    } else {
        Ok(())
    }
}
