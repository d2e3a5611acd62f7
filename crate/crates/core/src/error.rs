use num_bigint::BigInt;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NonPrime(u64),
    #[error("extension degree must be at least 1, got {0}")]
    BadDegree(u32),
    #[error("division by zero")]
    DivisionByZero,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("{what}: {size} exceeds the cap of {cap}")]
    TooLarge { what: &'static str, size: String, cap: u64 },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("unsupported matrix size {0}")]
    UnsupportedSize(usize),
    #[error("could not factor cofactor {0} of the index")]
    FactorizationIncomplete(BigInt),
    #[error("certification failed: {0}")]
    CertificationFailed(String),
    #[error("polynomial division left a nonzero remainder: {0}")]
    DivisionInexact(String),
    #[error("psi_{k}: numerator is not divisible by the case divisor")]
    NotDivisible { k: u32 },
    #[error("tail exponent {0} gives a divergent tail")]
    DivergentTail(f64),
    #[error("invalid JSON: {0}")]
    InvalidJson(String),
    #[error("unknown command: {0}")]
    UnknownCommand(String),
}

impl Error {
    pub(crate) fn bad(msg: impl Into<String>) -> Self {
        Error::BadParams(msg.into())
    }

    pub(crate) fn too_large(what: &'static str, size: impl ToString, cap: u64) -> Self {
        Error::TooLarge { what, size: size.to_string(), cap }
    }
}
