//! Cesàro summability of improper integrals of fuzzy-number-valued functions.
//!
//! A fuzzy number is kept as a family of nested intervals indexed by a shared
//! alpha grid; a fuzzy-number-valued function is a pair of endpoint
//! evaluators. On top of those sit endpoint-wise adaptive quadrature for the
//! integral function s(t), the Cesàro means sigma(t) = (1/t) * integral of s,
//! deferred means over multiplicative windows, limit estimation in the
//! supremum metric D, and finite-scale checkers for the one-sided conditions
//! (averaged window conditions, slow decrease, Landau-type bound) under which
//! Cesàro summability upgrades to plain convergence.
//!
//! Everything is deterministic: values are immutable after construction, all
//! operations are pure, and level-wise loops accumulate strictly left to
//! right.

// `!(x > 0.0)` is used on purpose for parameter checks: unlike `x <= 0.0`,
// it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod expr;
pub mod function;
pub mod grid;
pub mod integrate;
pub mod number;
pub mod summability;
pub mod tauberian;

pub use error::{Error, Result};
pub use expr::{parse, Expr};
pub use function::{catalog, find, manifest, CatalogEntry, FuzzyFunction};
pub use grid::AlphaGrid;
pub use integrate::{integrate_on, IntegralTrace, LemmaIdentityReport, SamplingPlan};
pub use number::{FuzzyNumber, InvariantViolation};
pub use summability::{
    cesaro_mean_of_function, classify, classify_trace, estimate_limit, estimate_limit_with,
    AnalysisReport, LimitEstimate, LimitStatus, DEFAULT_ANALYSIS_TOL,
};
pub use tauberian::{
    check_backward_slow_decrease, check_condition_doublestar, check_condition_star, check_landau,
    check_slow_decrease, landau_lambda, CheckerOutcome, CheckerParams, CheckerVerdict, Witness,
    DEFAULT_STRIDE,
};
