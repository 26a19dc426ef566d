use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("p must be prime in {{2,3,5,7}} (got {0})")]
    UnsupportedPrime(u32),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("not a p-th power")]
    NotPthPower,

    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),

    #[error("characteristic mismatch: {0} vs {1}")]
    PrimeMismatch(u32, u32),

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// A vanishing graded form whose class is not in the image of Frobenius.
    /// This would contradict the graded exact sequences the reductions rely on.
    #[error("exactness violation: {0}")]
    ExactnessViolation(String),

    #[error("not regular: {0}")]
    NotRegular(String),

    #[error("non-reducible monomial: {0}")]
    NonReducibleMonomial(String),

    #[error("consistency check failed: {0}")]
    Inconsistent(String),

    #[error("integrality failure: {0}")]
    Integrality(String),

    #[error("{0}")]
    Parse(#[from] crate::expr::ParseError),
}

pub type Result<T> = std::result::Result<T, Error>;
