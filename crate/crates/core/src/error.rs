use thiserror::Error;

/// Errors raised by design construction, evaluation and modeling.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("entry ({row}, {col}) = {value} lies outside [0, 1]")]
    Domain { row: usize, col: usize, value: f64 },

    #[error("invalid shape: {0}")]
    Shape(String),

    #[error("index ({row}, {col}) out of range for a {n}x{s} design")]
    IndexOutOfRange {
        row: usize,
        col: usize,
        n: usize,
        s: usize,
    },

    #[error("level count q = {q} does not divide run count n = {n}")]
    NotDivisible { n: usize, q: usize },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("training rows {first} and {second} are identical")]
    DuplicateRows { first: usize, second: usize },

    #[error("{n} runs cannot identify a trend with {terms} terms (need n > terms)")]
    Underdetermined { n: usize, terms: usize },

    #[error("numerical failure: {0}")]
    Numerical(String),
}

pub type Result<T> = std::result::Result<T, Error>;
