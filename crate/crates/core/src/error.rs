use thiserror::Error;

/// Errors raised by the exact-arithmetic, counting and certificate layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("radicand {0} is not a squarefree integer >= 2")]
    NonSquarefreeRadicand(i64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("radicand mismatch: {0} vs {1}")]
    RadicandMismatch(i64, i64),
    #[error("basis elements are linearly dependent over Q")]
    DegenerateBasis,
    #[error("{0} is not prime")]
    NotPrime(String),
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("{0} and {1} are not coprime")]
    NotCoprime(u64, u64),
    #[error("cap exceeded: needs {needed}, cap is {cap}")]
    CapExceeded { needed: u128, cap: u128 },
    #[error("{0} lies outside [-2, 2]")]
    OutOfRange(String),
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("gcd bound violated: G = {g} does not divide 8d = {bound}")]
    GcdBoundViolated { g: i64, bound: i64 },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
