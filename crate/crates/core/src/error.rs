use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("qubit count mismatch: {left} vs {right}")]
    QubitMismatch { left: usize, right: usize },

    #[error("index {index} out of range for {len} qubits")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("expected {expected} parameters, got {actual}")]
    ParameterLength { expected: usize, actual: usize },

    #[error("invalid gate: {0}")]
    InvalidGate(String),

    #[error("system of {0} qubits is too large for dense diagonalization")]
    TooLarge(usize),

    #[error("numerical inconsistency: {0}")]
    Numerical(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("undefined metric: {0}")]
    UndefinedMetric(String),
}

pub type Result<T> = std::result::Result<T, Error>;
