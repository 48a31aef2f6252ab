use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors raised by the number-theory toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("{value} is not an odd prime")]
    NotOddPrime { value: String },

    #[error("{a} has no square root modulo {modulus}")]
    NoSquareRoot { a: String, modulus: String },

    #[error("moduli at positions {first} and {second} are not coprime ({m1}, {m2})")]
    NonCoprimeModuli {
        first: usize,
        second: usize,
        m1: String,
        m2: String,
    },

    #[error("{value} is not invertible modulo {modulus}")]
    NotInvertible { value: String, modulus: String },

    #[error("singular curve: 4A^3 + 27B^2 = 0")]
    SingularCurve,

    #[error("point is not on the curve")]
    NotOnCurve,

    #[error("point is torsion of order {order}")]
    TorsionPoint { order: u64 },

    #[error("bad reduction at p = {p}")]
    BadReduction { p: u64 },

    #[error("invalid Ward seed: {0}")]
    InvalidSeed(String),

    #[error("Ward recurrence division is not exact at index {index}")]
    InexactWardDivision { index: usize },

    #[error("prime {p} divides the last recurrence coefficient; pre-periodic sequences are not supported")]
    PrePeriodic { p: u64 },

    #[error("recurrence is degenerate (ratio of roots has order {order}); apply the non-degenerate reduction first")]
    Degenerate { order: u64 },

    #[error("division values do not reproduce the stored sequence at n = {index}; try a stride")]
    DivisionValueMismatch { index: usize },

    #[error("need at least {needed} terms to fit, got {got}")]
    InsufficientTerms { needed: usize, got: usize },

    #[error("no linear recurrence of order <= {bound} fits the terms")]
    NoFit { bound: usize },

    #[error("order-{order} recurrence has non-integer coefficients ({coeffs}); not an integer recurrence of that order")]
    FatouViolation { order: usize, coeffs: String },

    #[error("fitted order-{order} recurrence has zero last coefficient (eventually-zero sequence)")]
    ZeroTrailingCoefficient { order: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}
