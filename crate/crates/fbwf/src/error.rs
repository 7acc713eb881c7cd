use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors produced by the filter-design library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("gamma function pole at x = {0} (non-positive integer)")]
    GammaPole(f64),

    #[error("mittag-leffler argument |z| = {0} outside the convergence guard (|z| <= 5)")]
    MittagLefflerRange(f64),

    #[error("mittag-leffler series did not converge within {0} terms")]
    MittagLefflerDivergent(usize),

    #[error("invalid rational order: {0}")]
    InvalidOrder(String),

    #[error("cannot classify a pole at the origin")]
    ZeroPole,

    #[error("pole set is not closed under conjugation")]
    NotConjugateClosed,

    #[error("cannot expand an empty factor list")]
    EmptyFactorList,

    #[error("cascade requires at least one stage")]
    EmptyCascade,

    #[error("invalid design specification: {0}")]
    InvalidSpec(String),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("step response diverged at t = {t}: |y| = {y:.3e}")]
    StepDiverged { t: f64, y: f64 },

    #[error("stage cannot be simulated: {0}")]
    UnsupportedStage(String),
}
