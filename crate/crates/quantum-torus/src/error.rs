//! Error type shared by all modules.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid input: {0}")]
    Input(String),
    #[error("torus elements live on different lattices")]
    LatticeMismatch,
    #[error("element is not pointed: {0}")]
    NotPointed(String),
    #[error("flip not allowed at edge {0}")]
    FlipNotAllowed(u32),
    #[error("exponent vector is not balanced")]
    NotBalanced,
    #[error("odd exponent in congruent conversion")]
    OddExponent,
    #[error("lamination is not congruent")]
    NotCongruent,
    #[error("inadmissible stated data: {0}")]
    Inadmissible(String),
    #[error("operation is outside the engine scope: {0}")]
    OutOfScope(String),
}

pub type Result<T> = std::result::Result<T, Error>;
