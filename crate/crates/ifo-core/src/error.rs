use thiserror::Error;

/// Errors reported by automaton constructions and generators.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoreError {
    #[error("alphabets do not match: {0}")]
    AlphabetMismatch(String),
    #[error("event name {0:?} is not in the alphabet")]
    UnknownEvent(String),
    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),
    #[error("state {state} out of range 0..{count}")]
    StateOutOfRange { state: usize, count: usize },
    #[error("matrix dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("semigroup generator list is empty")]
    NoGenerators,
    #[error("invalid family parameter: {0}")]
    InvalidFamilyParam(String),
}
