use thiserror::Error;

/// Errors shared by every module in this crate.
///
/// Axiom violations discovered by `validate`/`validate_bimodule` are *not*
/// errors; they are collected in a [`crate::superalg::ValidationReport`].
#[derive(Debug, Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("cannot parse {0:?} as an exact field element")]
    InvalidScalar(String),

    #[error("fields differ: {0}")]
    FieldMismatch(String),

    #[error("operands belong to different algebras: {0}")]
    AlgebraMismatch(String),

    #[error("middle algebras differ: {0}")]
    MiddleAlgebraMismatch(String),

    #[error("characteristic 2 is not supported here: {0}")]
    CharacteristicTwo(String),

    #[error("invalid structure: {0}")]
    InvalidStructure(String),

    #[error("boundary maps do not compose to zero entering degree {0}")]
    NotAComplex(usize),
}
