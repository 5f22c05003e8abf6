use thiserror::Error;

/// Errors raised while constructing or checking algebraic data.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PactError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("field mismatch: {0}")]
    FieldMismatch(String),

    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("structure constants are not associative: (e{}e{})e{} != e{}(e{}e{})", .0 + 1, .1 + 1, .2 + 1, .0 + 1, .1 + 1, .2 + 1)]
    NonAssociative(usize, usize, usize),

    #[error("bad unit: {0}")]
    BadUnit(String),

    #[error("not an ideal: {0}")]
    NotAnIdeal(String),

    #[error("not a subalgebra: {0}")]
    NotASubalgebra(String),

    #[error("not a group: {0}")]
    NotAGroup(String),

    #[error("not an isomorphism: {0}")]
    NotAnIsomorphism(String),

    #[error("missing units for: {}", .0.join(", "))]
    MissingUnits(Vec<String>),

    #[error("algebra is not unital")]
    NotUnital,

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("inconsistent linear data: {0}")]
    Inconsistent(String),

    #[error("verification failed: {0}")]
    VerificationFailed(String),
}

pub type Result<T> = std::result::Result<T, PactError>;
