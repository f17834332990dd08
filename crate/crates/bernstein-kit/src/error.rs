//! Error type shared across the crate.

use std::fmt;

/// Errors produced by construction, division, series evaluation and the
/// orthogonality machinery.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Interval endpoints coincide (`a == b`).
    DegenerateInterval,
    /// A parameter is outside its admissible range; the payload names it.
    OutOfRange(String),
    /// The double-sum generating function does not converge (`|a/b| >= 1` or `b == 0`).
    DivergentSeries { ratio: f64 },
    /// Exponential overflow in a float-backend evaluation.
    Overflow(String),
    /// Exact division requested but the divisibility precondition fails at `index`.
    NotDivisible { index: usize },
    /// No weight sequence satisfies the generating-function premise.
    InconsistentSystem(String),
    /// The truncated tail of an infinite pairing sum exceeds the requested tolerance.
    TruncationTolerance { bound: f64, tol: f64 },
    /// Malformed scalar, polynomial or curve input.
    Parse(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DegenerateInterval => write!(f, "interval endpoints must differ (a != b)"),
            Error::OutOfRange(what) => write!(f, "out of range: {what}"),
            Error::DivergentSeries { ratio } => {
                write!(
                    f,
                    "series diverges: |a/b| = {ratio} must be < 1 and b nonzero"
                )
            }
            Error::Overflow(what) => write!(f, "overflow: {what}"),
            Error::NotDivisible { index } => {
                write!(
                    f,
                    "NotDivisible: coefficient {index} violates the divisibility precondition"
                )
            }
            Error::InconsistentSystem(what) => {
                write!(f, "inconsistent system: {what}")
            }
            Error::TruncationTolerance { bound, tol } => {
                write!(
                    f,
                    "truncation tail bound {bound:e} exceeds tolerance budget {tol:e}"
                )
            }
            Error::Parse(what) => write!(f, "parse error: {what}"),
        }
    }
}

impl std::error::Error for Error {}
