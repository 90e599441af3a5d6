use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("extension degree {0} is outside 1..=24")]
    DegreeOutOfRange(u32),
    #[error("modulus {modulus} is not an irreducible polynomial of degree {degree}")]
    ReducibleModulus { modulus: u64, degree: u32 },
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("element {value} is out of range for GF(2^{m})")]
    ElementOutOfRange { value: u64, m: u32 },
    #[error("expected {expected} bits, got {got}")]
    BitLength { expected: usize, got: usize },
    #[error("empty input: {0}")]
    Empty(&'static str),
    #[error("invalid curve parameters: {0}")]
    InvalidCurve(String),
    #[error("generators have gcd {0}, numerical semigroup needs gcd 1")]
    SemigroupGcd(u64),
    #[error("construction failure: {0}")]
    Construction(String),
    #[error("matrix is singular")]
    Singular,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("kernel file parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("resource guard exceeded: {0}")]
    Guard(String),
    #[error("no sign change on [{lo}, {hi}]")]
    NoSignChange { lo: f64, hi: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
