use thiserror::Error;

/// Errors produced by the algebra, code and analysis layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("polynomial {0:?} is reducible over Z_p")]
    ReduciblePolynomial(Vec<u32>),
    #[error("polynomial degree mismatch: expected degree {expected}, got coefficients {got:?}")]
    DegreeMismatch { expected: usize, got: Vec<u32> },
    #[error("polynomial {0:?} is not monic")]
    NotMonic(Vec<u32>),
    #[error("field of order {p}^{r} is too large")]
    FieldTooLarge { p: u64, r: usize },
    #[error("residue {value} out of range for p = {p}")]
    ResidueOutOfRange { value: u64, p: u64 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("shape mismatch: expected {expected}, got {got}")]
    ShapeMismatch { expected: usize, got: usize },
    #[error("level k = {k} out of range for j = {j}")]
    LevelOutOfRange { j: usize, k: usize },
    #[error("empty generator list")]
    EmptyGeneratorList,
    #[error("generator {index} has length {got}, expected {expected}")]
    LengthMismatch { index: usize, expected: usize, got: usize },
    #[error("code length must be at least 1")]
    EmptyLengthZero,
    #[error("{what} has {size} items, exceeding the cap of {cap}")]
    TooLargeToEnumerate { what: String, size: u128, cap: u128 },
    #[error("character matrix would have {rows} rows, exceeding the cap of {cap}")]
    MatrixTooLarge { rows: u128, cap: u128 },
    #[error("enumerator kind {enumerator} cannot be transformed by matrix kind {matrix}")]
    KindMismatch { enumerator: String, matrix: String },
    #[error("MacWilliams transform produced a non-integral or negative coefficient: {0}")]
    NonIntegralResult(String),
    #[error("shift {l} invalid for length {n}")]
    BadShift { l: usize, n: usize },
    #[error("component {component} is not cyclic")]
    NotCyclic { component: usize },
    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
