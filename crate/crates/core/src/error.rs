use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is singular")]
    Singular,
    #[error("matrix is not nilpotent")]
    NotNilpotent,
    #[error("matrix is not unipotent")]
    NotUnipotent,
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("not an element of the Lie algebra: {0}")]
    NotInAlgebra(String),
    #[error("not an element of the group: {0}")]
    NotInGroup(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("inconsistent structure: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
