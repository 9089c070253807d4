use thiserror::Error;

/// Errors surfaced by the engine.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },

    #[error("polynomial is not divisible by the linear form {divisor}")]
    NotDivisible { divisor: String },

    #[error("division by the zero linear form")]
    ZeroDivisor,

    #[error("invalid Cartan matrix: {0}")]
    InvalidCartan(String),

    #[error("unknown root system type `{0}`")]
    UnknownType(String),

    #[error("{0} is outside the default type set; allow large types to use it")]
    LargeType(String),

    #[error("Weyl group has more than {limit} elements")]
    SizeLimitExceeded { limit: usize },

    #[error("Weyl group closure did not terminate; the Cartan matrix is not of finite type")]
    NonFiniteGroup,

    #[error("invalid top class: {0}")]
    InvalidTopClass(String),

    #[error("invalid Weyl group element `{0}`")]
    InvalidElement(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invariant violated: {0}")]
    InvariantViolation(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
