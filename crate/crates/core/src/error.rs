use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid document at {path}: {message}")]
    Document { path: String, message: String },

    #[error("denominator vanishes at x = 0; Taylor coefficients are undefined")]
    DenVanishesAtZero,

    #[error("precondition violated: {0}")]
    PrecondViolation(String),

    #[error("absolute value did not stabilize to a closed form")]
    AbsNotStabilized,

    #[error("variant mismatch: {0}")]
    VariantMismatch(String),

    #[error("invalid chain complex: {0}")]
    InvalidComplex(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("triple cannot come from a short exact sequence: {0}")]
    InconsistentSes(String),

    #[error("connecting-rank recursion does not become periodic on periodic input")]
    NonPeriodicDelta,

    #[error("chain map is not injective in degree {degree}")]
    NotInjective { degree: usize },

    #[error("no Hölder order stabilized within tolerance")]
    NoConvergence,

    #[error("cannot certify: {0}")]
    Uncertifiable(String),
}
