use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus must be at least 1")]
    ZeroModulus,
    #[error("{what} {value} exceeds the supported maximum {max}")]
    OutOfRange {
        what: &'static str,
        value: u64,
        max: u64,
    },
    #[error("overflow while computing {0}")]
    Overflow(&'static str),
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{a} is not invertible modulo {m}")]
    NotCoprime { a: i64, m: u64 },
    #[error("operation requires b = 1 (K-Fibonacci), got b = {b}")]
    RequiresUnitB { b: i64 },
    #[error("even K = {k} with even modulus {m} is outside the classification's scope (odd moduli only)")]
    EvenModulusForEvenK { k: i64, m: u64 },
    #[error("({a}, {b}) is not one of the degenerate parameter pairs")]
    NotDegenerate { a: i64, b: i64 },
    #[error("unknown {kind} `{value}`")]
    Unknown { kind: &'static str, value: String },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
