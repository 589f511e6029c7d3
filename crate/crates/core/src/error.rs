use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("integer overflow in exact arithmetic; retry with BigInt coefficients")]
    Overflow,

    #[error("modulus mismatch: {left} vs {right}")]
    ModulusMismatch { left: usize, right: usize },

    #[error("coefficient {value} at exponent {index} is negative")]
    NegativeCoefficient { index: usize, value: String },

    #[error("modulus {n} has {primes} distinct prime factors; at most two are supported")]
    UnsupportedModulus { n: usize, primes: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("resource limit exceeded: {0}")]
    Resource(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
