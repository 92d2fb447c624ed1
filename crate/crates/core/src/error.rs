use thiserror::Error;

/// Errors produced by the constructions and verifiers in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid root-of-unity order {0}: the order must be positive")]
    InvalidOrder(u64),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("product is not monomial and cannot be kept in exact phase form")]
    NotMonomial,

    #[error("global scale 1/sqrt({norm}) cannot be represented for dimension {dim}")]
    UnsupportedScale { dim: usize, norm: u64 },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("{a} and {b} are not coprime")]
    NotCoprime { a: i64, b: i64 },

    #[error("invalid Gauss sum parameters (u={u}, v={v}, w={w}): {reason}")]
    InvalidGaussParams { u: i64, v: i64, w: i64, reason: &'static str },

    #[error("{0}")]
    InvalidArgument(String),

    #[error("dimension {d} exceeds the enumeration bound {bound}")]
    ResourceBound { d: u64, bound: u64 },

    #[error("malformed matrix data: {0}")]
    Malformed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
