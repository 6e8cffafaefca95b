//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("modulus {0} is not prime")]
    NonPrimeModulus(u64),
    #[error("extension polynomial is reducible over F_{0}")]
    ReducibleModulus(u64),
    #[error("cannot enumerate an infinite field")]
    InfiniteField,
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("substituted series has a nonzero constant term")]
    NonzeroConstantTerm,
    #[error("empty sample of points")]
    EmptySample,
    #[error("enumeration budget exceeded: {0} elements requested, budget {1}")]
    BudgetExceeded(u128, u64),
    #[error("stratum is empty for the requested parameters")]
    EmptyStratum,
    #[error("no admissible lattice point in the region")]
    EmptyRegion,
    #[error("all tower levels produced zero hits")]
    DegenerateTower,
    #[error("series has a nonzero constant term")]
    NonzeroConstant,
    #[error("Milnor number not certified finite within the budget")]
    NotCertifiedFinite,
    #[error("series has terms of order below two")]
    OrderTooLow,
    #[error("truncation order must be at least 2")]
    NotTruncatable,
    #[error("point does not have corank one")]
    WrongCorank,
    #[error("target dimension exceeds source dimension")]
    TargetTooBig,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
