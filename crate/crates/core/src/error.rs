use thiserror::Error;

use crate::perm::Permutation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty permutation text")]
    EmptyInput,

    #[error("invalid token {token:?}: not an integer")]
    InvalidToken { token: String },

    #[error("invalid token {token:?}: values must be positive")]
    NonPositive { token: String },

    #[error("duplicate value {token}")]
    Duplicate { token: String },

    #[error(
        "value {token} out of range for a permutation of length {len} (value {missing} is missing)"
    )]
    Gap {
        token: String,
        len: usize,
        missing: usize,
    },

    #[error("position {pos} out of range 1..={len}")]
    PositionOutOfRange { pos: usize, len: usize },

    #[error("values at positions {start}..={end} do not form an interval")]
    NotAnInterval { start: usize, end: usize },

    #[error("{op} requires a non-empty permutation")]
    EmptyPermutation { op: &'static str },

    #[error("{op} requires length at least {min}, got {len}")]
    TooShort {
        op: &'static str,
        min: usize,
        len: usize,
    },

    #[error("{op} is undefined on the decreasing permutation {perm}")]
    Decreasing { op: &'static str, perm: Permutation },

    #[error("a pattern set needs at least one non-empty pattern")]
    EmptyPattern,

    #[error("{op} requires a {pattern}-avoiding input, but {perm} contains {pattern} at positions {}", join_positions(.positions))]
    ContainsPattern {
        op: &'static str,
        pattern: Permutation,
        perm: Permutation,
        positions: Vec<usize>,
    },

    #[error(
        "unknown statistic {0:?} (expected one of maj, des, rlmax, lrmin, steps, posn, posn1)"
    )]
    UnknownStatistic(String),
}

fn join_positions(positions: &[usize]) -> String {
    positions
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(",")
}
