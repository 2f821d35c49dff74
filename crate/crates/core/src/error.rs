use thiserror::Error;

/// Errors raised by the number-theoretic and analytic routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{0} is not a fundamental negative discriminant")]
    NotFundamental(i64),
    #[error("forms have different discriminants ({0} vs {1})")]
    DiscriminantMismatch(i64, i64),
    #[error("integer overflow in form arithmetic")]
    Overflow,
    #[error("prime {n} is not split in discriminant {d}")]
    NotSplit { d: i64, n: i64 },
    #[error("{0} is not prime")]
    NotPrime(i64),
    #[error("pole or singular parameter: {0}")]
    Singular(String),
    #[error("parameter out of domain: {0}")]
    Domain(String),
    #[error("numerical method failed: {0}")]
    Numerical(String),
}

pub type Result<T> = std::result::Result<T, Error>;
