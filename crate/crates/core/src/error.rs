use thiserror::Error;

/// Errors raised by the algebra layer.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid field parameters: {0}")]
    InvalidField(String),
    #[error("zero polynomial has no factorization")]
    ZeroPolynomial,
    #[error("division by zero")]
    DivisionByZero,
    #[error("negative twist of a coefficient that is not a q-th power")]
    NegativeTwist,
    #[error("coefficient {0} does not lie in the scalar field F_q")]
    NotInSubfield(String),
    #[error("invalid place: {0}")]
    InvalidPlace(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("point {0} is zero")]
    ZeroPoint(usize),
    #[error("points {0} and {1} coincide")]
    DuplicatePoints(usize, usize),
    #[error("coefficient outside the Riemann-Roch space: {0}")]
    OutsideRiemannRoch(String),
    #[error("outside the convergence domain: {0}")]
    Domain(String),
    #[error("enumeration of {0} tuples exceeds the limit")]
    EnumerationTooLarge(u128),
    #[error("no admissible multiplier found: {0}")]
    NoAdmissibleMultiplier(String),
    #[error("series live in different completions")]
    MixedCompletions,
    #[error("precision could not be reached: {0}")]
    Precision(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
