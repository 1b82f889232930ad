use alloc::string::String;

/// Errors raised when inputs violate the invariants of a type or an operation.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("cannot parse scalar {0:?}")]
    Parse(String),
    #[error("scalar {0} does not belong to the declared field")]
    WrongField(String),
    #[error("shape mismatch: expected {expected:?}, found {found:?}")]
    Shape { expected: (usize, usize), found: (usize, usize) },
    #[error("operands live over different fields")]
    FieldMismatch,
    #[error("relations are not contained in the span of the generators")]
    ContainmentViolation,
    #[error("d∘d is nonzero out of degree {degree}")]
    DifferentialSquare { degree: i64 },
    #[error("map does not commute with the differentials in degree {degree}")]
    NotChainMap { degree: i64 },
    #[error("map has the wrong source or target")]
    EndpointMismatch,
    #[error("window ({0}, {1}) is empty")]
    EmptyWindow(i64, i64),
    #[error("square at index {index} does not commute")]
    NonCommutingSquare { index: i64 },
    #[error("structure map at index {index} is not injective")]
    NotMonic { index: i64 },
    #[error("sequence is not bounded below: its bottom level has homology")]
    NotBoundedBelow,
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}
