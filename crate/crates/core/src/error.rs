use thiserror::Error;

use crate::fields::FieldSpec;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(FieldSpec, FieldSpec),
    #[error("division by zero")]
    DivisionByZero,
    #[error("field {0} is not enumerable")]
    NotEnumerable(FieldSpec),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("singular matrix")]
    SingularMatrix,
    #[error("invalid shape: {0}")]
    InvalidShape(String),
    #[error("vectors are linearly dependent: {0}")]
    LinearlyDependent(String),
    #[error("inconsistent subspace representations")]
    InconsistentSubspace,
    #[error("not codimension 1: covector is zero")]
    NotCodimensionOne,
    #[error("{0}")]
    InvalidArgument(String),
    #[error("field too small (no guarantee): {0}")]
    FieldTooSmall(String),
    #[error("completion not found after {trials} trials")]
    CompletionNotFound { trials: u64 },
    #[error("enumeration budget exceeded: {required} candidates required, budget {budget}")]
    BudgetExceeded { required: u128, budget: u128 },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
