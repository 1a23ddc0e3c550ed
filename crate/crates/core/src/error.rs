use thiserror::Error;

/// Errors raised by the library.
///
/// Input problems, resource guards and failed internal certifications are kept
/// apart so front ends can map them to distinct exit statuses.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid height data: {0}")]
    InvalidData(String),

    #[error("unknown edge `{0}`")]
    UnknownEdge(String),

    #[error("elements belong to different graphs")]
    MixedGraphs,

    #[error("empty word")]
    EmptyWord,

    #[error("word is not admissible")]
    Inadmissible,

    #[error("sequence is not a path in the companion graph (break at position {0})")]
    NotAPath(usize),

    #[error("window too short: need {needed} letters of past, have {available}")]
    WindowTooShort { needed: usize, available: usize },

    #[error("matrix is reducible")]
    Reducible,

    #[error("matrix is not square")]
    NotSquare,

    #[error("series has constant term {found}, expected {expected}")]
    ConstantTerm { expected: String, found: String },

    #[error("census covers n <= {available}, requested order {requested}")]
    CensusTooShort { requested: usize, available: usize },

    #[error("admissible-word budget of {0} exceeded")]
    BudgetExceeded(u64),

    #[error("fixed-point iteration did not stabilise within {0} rounds")]
    NonStabilization(usize),

    #[error("unsupported height {0}")]
    UnsupportedHeight(usize),

    #[error("polynomial must be monic of degree {0}")]
    NotMonic(usize),

    #[error("closed-form root {value} has no certified partner within {tolerance:e}")]
    Certification { value: f64, tolerance: f64 },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
