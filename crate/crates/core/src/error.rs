use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("exponent {exponent} outside [0, {max}]")]
    ExponentOutOfRange { exponent: usize, max: usize },

    #[error("nonzero framing {0}; framed unknots are handled by the colimit module")]
    NonzeroFraming(i64),

    #[error("cable truncation r_max = {r_max} has not stabilized for quantum degrees >= {q_min} (needs r_max >= {required})")]
    UnstableWindow { r_max: usize, q_min: i64, required: usize },

    #[error("matrix has {nonzeros} nonzero entries, above the cap of {cap}")]
    ResourceCap { nonzeros: usize, cap: usize },

    #[error("n = {n} exceeds the configured bound {max}")]
    DimensionCap { n: usize, max: usize },

    #[error("permutation mixes odd and even indices")]
    ParityMixing,

    #[error("linear system has no integer solution")]
    NoIntegerSolution,

    #[error("functional does not lie in the dual of the center")]
    NotInDual,
}
