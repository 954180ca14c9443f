use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("semiring mismatch: {left} vs {right}")]
    SemiringMismatch { left: String, right: String },

    #[error("entry {entry} is not an element of {semiring}")]
    NotInSemiring { entry: String, semiring: String },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("internal consistency failure: {0}")]
    InternalConsistency(String),

    #[error("bad constant term: {0}")]
    BadConstantTerm(String),

    #[error("arity error at term path {path}: {message}")]
    Arity { path: String, message: String },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },

    #[error("model error: {0}")]
    Model(String),

    #[error("no visible wire to trace")]
    NothingToTrace,

    #[error("move does not apply at this site: {0}")]
    MoveSite(String),

    #[error("invalid monoid: {0}")]
    InvalidMonoid(String),

    #[error("invalid homomorphism: {0}")]
    InvalidHom(String),

    #[error("enumeration budget exceeded: {needed} assignments, limit {limit}")]
    BudgetExceeded { needed: String, limit: u64 },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("row {row} out of range for size {size}")]
    RowOutOfRange { row: usize, size: usize },

    #[error("step rejected: {0}")]
    StepRejected(String),

    #[error("value out of range: {0}")]
    OutOfRange(String),

    #[error("malformed document: {0}")]
    Malformed(String),
}

impl Error {
    pub(crate) fn dims(msg: impl Into<String>) -> Self {
        Error::DimensionMismatch(msg.into())
    }
}
