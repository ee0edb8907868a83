use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("no value assigned to a{0}")]
    MissingAssignment(u32),

    #[error("alpha sequence too short: need {needed} values, have {available}")]
    InsufficientAlpha { needed: usize, available: usize },

    #[error("symbolic alpha cannot be evaluated over the rationals (and vice versa)")]
    RingMismatch,

    #[error("truncation too small: need size {needed}, have {available}")]
    TruncationTooSmall { needed: usize, available: usize },

    #[error("polynomial sequence is not monic at index {0}")]
    NotMonic(usize),

    #[error("coefficient of x^{m} in P_{n} violates the symmetry pattern")]
    SymmetryViolation { n: usize, m: usize },

    #[error("not enough moments: need degree {needed}, have {available}")]
    InsufficientMoments { needed: usize, available: usize },

    #[error("gamma weight requested at height {height}, table covers heights below {bound}")]
    HeightOutOfRange { height: usize, bound: usize },

    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("polynomial is not squarefree")]
    NotSquarefree,

    #[error("expected all roots in (0, inf), found {0} there")]
    RootsNotAllPositive(usize),

    #[error("constant polynomial has no roots to isolate")]
    ConstantPolynomial,

    #[error("cannot separate root boxes above the refinement floor")]
    CannotSeparate,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
