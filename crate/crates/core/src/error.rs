use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("constant term {0} is not a unit in the integers")]
    NonUnitConstantTerm(String),

    #[error("monomial sign must be +1 or -1, got {0}")]
    BadSign(i64),

    #[error("bad specialization: {0}")]
    BadSpecialization(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("part {value}{} is not allowed for d = {d}, r = {r}", if *.overlined { "o" } else { "" })]
    IllegalPart {
        value: u32,
        overlined: bool,
        d: u32,
        r: u32,
    },

    #[error("malformed overpartition: {0}")]
    MalformedOverPartition(String),

    #[error("event index {index} needs horizon {needed}, but only {horizon} indices were sampled")]
    HorizonExceeded {
        index: usize,
        needed: usize,
        horizon: usize,
    },

    #[error("no sample landed in the conditioning event")]
    ZeroConditioningEvent,

    #[error("series evaluation did not reach tolerance {tolerance:e} by order {order}")]
    ToleranceNotReached { tolerance: f64, order: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
