use thiserror::Error;

use crate::parse::FieldParseError;
use crate::scalar::{Scalar, ScalarParseError};

/// Errors reported by the exact-arithmetic operations.
///
/// Parse failures carry character offsets; domain failures name the
/// offending index or weight so reports can echo them verbatim.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// sin(0t) vanishes identically and is not a basis vector.
    #[error("sin(0t) is identically zero, not a basis vector")]
    SinZeroMode,

    /// An operation defined only on mean-zero fields received a field
    /// with a nonzero constant term.
    #[error("{op} requires a mean-zero field, got constant term {a0}")]
    MeanZeroRequired { op: &'static str, a0: Scalar },

    /// A weight that must be positive for the metric to exist is not.
    /// Scalars are boxed to keep `Result` payloads register-sized.
    #[error("theta_{k} = {value} is not positive at c = {c}, h = {h}")]
    ThetaNotPositive {
        k: i64,
        value: Box<Scalar>,
        c: Box<Scalar>,
        h: Box<Scalar>,
    },

    /// A weight appearing in a denominator vanishes.
    #[error("theta_{k} = 0 at c = {c}, h = {h}, coefficient undefined")]
    ThetaZero {
        k: i64,
        c: Box<Scalar>,
        h: Box<Scalar>,
    },

    #[error("index must be a positive integer, got {got}")]
    PositiveIndexRequired { got: i64 },

    #[error("index must be nonzero")]
    NonzeroIndexRequired,

    #[error("cutoff M = {cutoff} must be at least n = {n}")]
    CutoffBelowIndex { cutoff: i64, n: i64 },

    #[error("max mode must be at least 1")]
    MaxModeZero,

    #[error("division by zero")]
    DivisionByZero,

    #[error(transparent)]
    ScalarParse(#[from] ScalarParseError),

    #[error(transparent)]
    FieldParse(#[from] FieldParseError),
}
