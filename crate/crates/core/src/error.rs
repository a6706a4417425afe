//! Crate-wide error type.

use crate::expr::{EvalError, ParseError};
use crate::number::InvariantViolation;

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("alpha grids of the operands differ")]
    GridMismatch,

    #[error("{what} must be finite, got {value}")]
    NonFinite { what: &'static str, value: f64 },

    #[error("invalid alpha grid: {0}")]
    InvalidGrid(String),

    #[error("endpoint arrays must have one entry per grid level ({expected}), got lower = {lower}, upper = {upper}")]
    LengthMismatch {
        expected: usize,
        lower: usize,
        upper: usize,
    },

    #[error("epsilon must be nonnegative, got {0}")]
    NegativeEpsilon(f64),

    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error(transparent)]
    Eval(#[from] EvalError),

    #[error("x = {x} is outside the function domain [{domain_start}, inf)")]
    OutOfDomain { x: f64, domain_start: f64 },

    #[error("fuzzy-number invariant violated at x = {x}, alpha = {alpha}: {violation}")]
    PointwiseInvariant {
        x: f64,
        alpha: f64,
        violation: InvariantViolation,
    },

    #[error("invalid sampling plan: {0}")]
    InvalidPlan(String),

    #[error("integration bounds reversed: a = {a} > b = {b}")]
    ReversedBounds { a: f64, b: f64 },

    #[error("quadrature did not reach tolerance {tol:e} on [{a}, {b}] within the subdivision budget")]
    QuadratureBudget { a: f64, b: f64, tol: f64 },

    #[error("t = {t} is outside the trace range (0, {t_max}]")]
    OutOfRange { t: f64, t_max: f64 },

    #[error("invalid window parameter: {0}")]
    InvalidWindow(String),

    #[error("series needs at least {needed} samples, got {got}")]
    TooFewSamples { needed: usize, got: usize },

    #[error("series abscissae must be strictly increasing")]
    NonMonotoneSeries,

    #[error("empty scan range: {0}")]
    EmptyScanRange(String),

    #[error("Landau bound must be a negative fuzzy number or the crisp zero: {0}")]
    InvalidLandauBound(String),

    #[error("unknown catalog function: {0:?}")]
    UnknownFunction(String),
}
