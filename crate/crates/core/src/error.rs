use thiserror::Error;

/// Failures reported by the library.
///
/// Per-entry problems inside a table (a vanishing final denominator, a zero
/// difference in the epsilon recursion) are recorded as validity flags and
/// never surface through this type.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("division by zero in {0}")]
    DivisionByZero(&'static str),
    #[error("insufficient data: need {needed} values, have {available}")]
    InsufficientData { needed: usize, available: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("schedule factor n+k+q_m vanishes at k={k}, n={n}, m={m}")]
    SingularSchedule { k: usize, n: i64, m: usize },
    #[error("remainder estimate vanishes at index {0}")]
    ZeroEstimate(usize),
    #[error("v estimate is undefined at index {0}: a_n equals a_(n+1)")]
    DegenerateV(usize),
    #[error("vanishing denominator at k={k}, n={n}")]
    VanishingDenominator { k: usize, n: usize },
    #[error("coefficient gamma_{0} is zero but is used as a divisor")]
    ZeroCoefficient(usize),
    #[error("denominator has a zero constant term")]
    ZeroConstantTerm,
    #[error("interpolation points must be positive and strictly decreasing (violated at index {0})")]
    InvalidPoints(usize),
    #[error("coincident interpolation points at indices {0} and {1}")]
    CoincidentPoints(usize, usize),
    #[error("order {0} is too large for the exact binomial table")]
    OrderTooLarge(usize),
    #[error("cannot parse scalar literal {0:?}")]
    Parse(String),
    #[error("quadrature did not reach the requested accuracy (error bound {0:e})")]
    Quadrature(f64),
    #[error("unknown problem {0:?}")]
    UnknownProblem(String),
}

pub type Result<T> = std::result::Result<T, Error>;
