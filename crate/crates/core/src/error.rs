use thiserror::Error;

use crate::caps::CapKind;

/// Failures of the exact arithmetic layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("operation on the zero polynomial")]
    ZeroPolynomial,
    #[error("polynomial of degree {degree} exceeds the factorization cap {cap}")]
    FactorCapExceeded { degree: usize, cap: usize },
    #[error("division by zero")]
    DivisionByZero,
    #[error("tower cap exceeded (degree limit {0})")]
    TowerCapExceeded(usize),
    #[error("adjoin of reducible linear part")]
    ReducibleLinearPart,
}

/// Parse errors carry a 1-based position.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("{kind} cap exceeded (limit {limit})")]
    CapExceeded { kind: CapKind, limit: usize },
    #[error("numerator and denominator share the factor {0}")]
    NotCoprime(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("line is not invariant (remainder {0})")]
    NotInvariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
