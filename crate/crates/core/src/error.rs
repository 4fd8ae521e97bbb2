use std::fmt;

use crate::point::ProjPoint;

/// Errors raised by the distant-graph computations.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("the zero vector does not represent a point")]
    ZeroVector,
    #[error("({a}, {b}) is not a unimodular pair")]
    NonUnimodular { a: i64, b: i64 },
    #[error("{x} and {y} are equal or distant")]
    TrivialPair { x: ProjPoint, y: ProjPoint },
    #[error("{x} and {y} are not distant")]
    NotDistant { x: ProjPoint, y: ProjPoint },
    #[error("cone relation arguments must avoid the base points")]
    DegenerateArguments,
    #[error("integer overflow")]
    Overflow,
    #[error("slope {q}/{p} is below 2")]
    BadSlope { p: i64, q: i64 },
    #[error("cannot build a cycle with d_a = {d_a}, d_b = {d_b}")]
    InvalidSplit { d_a: u64, d_b: u64 },
    #[error("invalid coefficient runs: {0}")]
    InvalidCoefficients(String),
    #[error("{point} lies outside the view of bound {bound}")]
    OutOfBound { point: ProjPoint, bound: i64 },
    #[error("no path inside the view of bound {bound}")]
    Unreachable { bound: i64 },
    #[error("{0}")]
    InvalidPath(String),
    #[error("{what} {size} exceeds the limit of {limit}")]
    TooLarge {
        what: &'static str,
        size: u128,
        limit: u128,
    },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn parse(msg: impl fmt::Display) -> Self {
        Error::Parse(msg.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
