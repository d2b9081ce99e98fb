use thiserror::Error;

use crate::exact::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A rational parameter hit a zero denominator.
    #[error("pole: {denominator} vanishes at {parameter} = {value}")]
    Pole {
        denominator: String,
        parameter: &'static str,
        value: Rational,
    },

    #[error("variable context mismatch: {left:?} vs {right:?}")]
    VariableMismatch {
        left: Vec<String>,
        right: Vec<String>,
    },

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The solver's kernel dimension changed when more test inputs were added.
    #[error("unstable solution space: dimension {at_degree} at test degree {test_degree}, {at_next} at {}", test_degree + 1)]
    Instability {
        test_degree: u32,
        at_degree: usize,
        at_next: usize,
    },

    #[error("cannot parse rational from `{0}`")]
    ParseRational(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
