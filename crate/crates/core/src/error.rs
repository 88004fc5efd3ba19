use thiserror::Error;

/// Errors produced by the reliability engine.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid ladder: {0}")]
    InvalidSpec(String),

    #[error("a symmetric (S0 -> Un) ladder needs n >= 1")]
    SymmetricLadderTooShort,

    #[error("index {index} out of range 1..={max} for {what}")]
    OutOfRange {
        what: &'static str,
        index: usize,
        max: usize,
    },

    #[error("configuration {0} is not supported here")]
    UnsupportedConfig(String),

    #[error("unbound variable `{0}`")]
    UnboundVariable(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("series undefined: denominator has zero constant term in `{0}`")]
    SeriesUndefined(String),

    #[error("degenerate triangle: delta-wye transformation undefined")]
    DegenerateTriangle,

    #[error("repeated poles (separation {0:e}): partial fractions refused")]
    DegeneratePoles(f64),

    #[error("polynomial is not univariate in `{0}`")]
    NotUnivariate(String),

    #[error("state space too large: {components} components exceeds cap {cap}")]
    TooManyComponents { components: usize, cap: usize },

    #[error("terminal mismatch: {0}")]
    TerminalMismatch(String),

    #[error("invalid component: {0}")]
    InvalidComponent(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
