use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("generator index {index} out of range 1..={dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("elements belong to algebras of different rank ({left} vs {right})")]
    ContextMismatch { left: usize, right: usize },

    #[error("element is not in the commutator ideal")]
    NotInCommutatorIdeal,

    #[error("jacobian minor needs two distinct variables, got {0} twice")]
    EqualIndices(String),

    #[error("polynomial is not homogeneous: {0}")]
    NotHomogeneous(String),

    #[error("matrix is not unipotent")]
    NotUnipotent,

    #[error("not a GL2 character: {0}")]
    NotACharacter(String),

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("denominator factor has zero constant term: {0}")]
    ZeroConstantTerm(String),

    #[error("polynomial division is not exact")]
    InexactDivision,

    #[error("invalid module spec: {0}")]
    InvalidSpec(String),

    #[error("variable {0} is not declared for this module")]
    UndeclaredVariable(String),

    #[error("no witness pair known for spec {0}")]
    NoWitness(String),

    #[error("spec {0} does not end in a trivial block V0")]
    NoTrivialBlock(String),

    #[error("catalog error: {0}")]
    Catalog(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
