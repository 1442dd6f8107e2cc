use thiserror::Error;

use crate::report::AxiomReport;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("modulus {0} is not a prime below 2^32")]
    NotPrime(u64),
    #[error("field mismatch: expected {expected}, found {found}")]
    FieldMismatch { expected: String, found: String },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("out of supported bounds: {0}")]
    Bounds(String),
    #[error("invalid scalar {text:?}: {reason}")]
    InvalidScalar { text: String, reason: String },
    #[error("matrix is not invertible")]
    NotInvertible,
    #[error("skew completion expects entries on strictly increasing tuples only, found {0:?}")]
    NotIncreasing(Vec<usize>),
    #[error("wrong operator kind: expected {expected}, found {found}")]
    WrongKind { expected: String, found: String },
    #[error("hypothesis failed: {}", .0.axiom)]
    HypothesisFailed(Box<AxiomReport>),
    #[error("construction requires weight zero, got {0}")]
    NonzeroWeight(String),
    #[error("enumeration of {candidates} candidates exceeds budget {budget}")]
    BudgetExceeded { candidates: String, budget: u64 },
    #[error("enumeration needs a prime field, not the rationals")]
    RationalsUnsupported,
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("invalid bundle: {0}")]
    Semantic(String),
}

impl Error {
    pub(crate) fn dim(msg: impl Into<String>) -> Self {
        Error::DimensionMismatch(msg.into())
    }
}
