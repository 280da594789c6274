use thiserror::Error;

/// Errors raised by the toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("field of order {p}^{degree} exceeds the 2^20 element cap")]
    TooLarge { p: u64, degree: u64 },
    #[error("extension degree m = {0} must be at least 2")]
    ExtensionDegreeTooSmall(u32),
    #[error("subfield exponent r must be positive")]
    ZeroSubfieldExponent,
    #[error("division by zero")]
    DivisionByZero,
    #[error("element index {0} is outside the field")]
    ElementOutOfRange(u64),
    #[error("Weierstrass curve is singular")]
    SingularCurve,
    #[error("Weierstrass point scans are capped at q^m <= 4096, got {0}")]
    CurveTooLarge(u64),
    #[error("invalid place: {0}")]
    InvalidPlace(String),
    #[error("unsupported divisor: {0}")]
    UnsupportedDivisor(String),
    #[error("function has a pole at the evaluation point")]
    PoleAtPoint,
    #[error("evaluation point lies in the support of G+")]
    PointInSupport,
    #[error("deg G = {degree} must be smaller than the code length n = {length}")]
    DegreeTooLarge { degree: i64, length: usize },
    #[error("h^q - h could not be expressed in the coordinates of C")]
    CoordinateSolveFailed,
    #[error("#Supp(G-) > 1")]
    ConditionOneViolated,
    #[error("polynomial has a zero in the big field")]
    HasRationalZero,
    #[error("function is of the form h^p - h + c")]
    DegenerateInput,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("config error: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
