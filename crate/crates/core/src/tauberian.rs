//! Finite-scale checkers for the one-sided summability conditions: the
//! averaged window conditions, slow decrease (forward and backward), and the
//! one-sided Landau-type bound.
//!
//! Every checker is a falsifier over a finite sample grid: "no counterexample"
//! means none was found at this resolution and range, never a proof of the
//! asymptotic condition. Outcomes echo the scanned range and stride, and the
//! witness is always the scan-order-first violation, so outcomes are
//! deterministic functions of (trace, params).

use serde::Serialize;

use crate::error::{Error, Result};
use crate::function::FuzzyFunction;
use crate::integrate::{IntegralTrace, SamplingPlan};
use crate::number::FuzzyNumber;

/// Default decimation of the window-start grid in the pair scans.
pub const DEFAULT_STRIDE: usize = 10;

#[derive(Debug, Clone, Serialize)]
pub struct CheckerParams {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eps: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ell: Option<f64>,
    pub t0: f64,
    /// First and last window start actually scanned.
    pub range: (f64, f64),
    pub stride: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckerVerdict {
    NoCounterexample,
    Counterexample,
}

/// First violation found, in scan order (t ascending, then x ascending, then
/// level ascending with the lower endpoint before the upper).
#[derive(Debug, Clone, Serialize)]
pub struct Witness {
    pub t: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x: Option<f64>,
    pub alpha: f64,
    /// Signed slack of the violated inequality; negative at a violation.
    pub margin: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckerOutcome {
    pub name: String,
    pub params: CheckerParams,
    pub outcome: CheckerVerdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    pub notes: String,
}

fn check_eps(eps: f64) -> Result<()> {
    if !(eps > 0.0) || !eps.is_finite() {
        return Err(Error::InvalidWindow(format!("eps must be positive, got {eps}")));
    }
    Ok(())
}

/// Smallest slack of `small + eps <= big`, together with the first level (in
/// scan order) where the slack is negative.
fn first_violation(small: &FuzzyNumber, big: &FuzzyNumber, eps: f64) -> Option<(usize, f64)> {
    for l in 0..small.lower().len() {
        let m = big.lower()[l] - small.lower()[l] + eps;
        if m < 0.0 {
            return Some((l, m));
        }
        let m = big.upper()[l] - small.upper()[l] + eps;
        if m < 0.0 {
            return Some((l, m));
        }
    }
    None
}

/// Averaged forward condition: the mean of s over `[t, lambda t]` dominates
/// `s(t) - eps` at every sampled `t > t0` with `lambda t` inside the trace.
pub fn check_condition_star(trace: &IntegralTrace, eps: f64, lambda: f64, t0: f64) -> Result<CheckerOutcome> {
    check_eps(eps)?;
    if !(lambda > 1.0) || !lambda.is_finite() {
        return Err(Error::InvalidWindow(format!("lambda must be > 1, got {lambda}")));
    }
    let t_max = trace.plan().t_max;
    let slack = t_max * (1.0 + 1e-9);
    let mut scanned = None;
    let mut witness = None;
    for (i, &t) in trace.times().iter().enumerate() {
        if !(t > t0) || lambda * t > slack {
            continue;
        }
        scanned = Some(match scanned {
            None => (t, t),
            Some((lo, _)) => (lo, t),
        });
        let mean = trace.deferred_mean_forward(t, lambda)?;
        let s_t = &trace.s_samples()[i];
        if let Some((l, m)) = first_violation(s_t, &mean, eps) {
            witness = Some(Witness { t, x: None, alpha: trace.grid().levels()[l], margin: m });
            break;
        }
    }
    let range = scanned.ok_or_else(|| {
        Error::EmptyScanRange(format!("no sampled t with t > {t0} and lambda t <= {t_max}"))
    })?;
    Ok(outcome("condition-star", eps, Some(lambda), None, t0, range, 1, witness))
}

/// Averaged backward condition: the mean of s over `[ell t, t]` stays below
/// `s(t) + eps` at every sampled `t > t0`.
pub fn check_condition_doublestar(trace: &IntegralTrace, eps: f64, ell: f64, t0: f64) -> Result<CheckerOutcome> {
    check_eps(eps)?;
    if !(ell > 0.0 && ell < 1.0) {
        return Err(Error::InvalidWindow(format!("ell must be in (0, 1), got {ell}")));
    }
    let t_max = trace.plan().t_max;
    let mut scanned = None;
    let mut witness = None;
    for (i, &t) in trace.times().iter().enumerate() {
        if !(t > t0) || t > t_max * (1.0 + 1e-9) {
            continue;
        }
        scanned = Some(match scanned {
            None => (t, t),
            Some((lo, _)) => (lo, t),
        });
        let mean = trace.deferred_mean_backward(t, ell)?;
        let s_t = &trace.s_samples()[i];
        if let Some((l, m)) = first_violation(&mean, s_t, eps) {
            witness = Some(Witness { t, x: None, alpha: trace.grid().levels()[l], margin: m });
            break;
        }
    }
    let range = scanned
        .ok_or_else(|| Error::EmptyScanRange(format!("no sampled t with t > {t0}")))?;
    Ok(outcome("condition-doublestar", eps, None, Some(ell), t0, range, 1, witness))
}

/// Slow decrease: `s(x) + eps` dominates `s(t)` endpoint-wise whenever
/// `t0 < t < x <= lambda t` (the endpoint families are equi-slowly
/// decreasing). Window starts step through the samples with `stride`; the
/// window interior is scanned at full resolution.
pub fn check_slow_decrease(
    trace: &IntegralTrace,
    eps: f64,
    lambda: f64,
    t0: f64,
    stride: usize,
) -> Result<CheckerOutcome> {
    check_eps(eps)?;
    if !(lambda > 1.0) || !lambda.is_finite() {
        return Err(Error::InvalidWindow(format!("lambda must be > 1, got {lambda}")));
    }
    let stride = stride.max(1);
    let times = trace.times();
    let s = trace.s_samples();
    let mut scanned = None;
    let mut pairs = 0usize;
    let mut witness = None;

    'outer: for i in (0..times.len()).step_by(stride) {
        let t = times[i];
        if !(t > t0) {
            continue;
        }
        let x_cap = lambda * t * (1.0 + 1e-12);
        if i + 1 < times.len() && times[i + 1] <= x_cap {
            scanned = Some(match scanned {
                None => (t, t),
                Some((lo, _)) => (lo, t),
            });
        }
        for j in (i + 1)..times.len() {
            let x = times[j];
            if x > x_cap {
                break;
            }
            pairs += 1;
            if let Some((l, m)) = first_violation(&s[i], &s[j], eps) {
                witness = Some(Witness { t, x: Some(x), alpha: trace.grid().levels()[l], margin: m });
                break 'outer;
            }
        }
    }
    let range = scanned.ok_or_else(|| {
        Error::EmptyScanRange(format!(
            "no sample pair t0 < t < x <= lambda t with t0 = {t0}, lambda = {lambda}"
        ))
    })?;
    let mut out = outcome("slow-decrease", eps, Some(lambda), None, t0, range, stride, witness);
    out.notes = format!("{} ({} pairs scanned)", out.notes, pairs);
    Ok(out)
}

/// Backward slow decrease: `s(t)` dominates `s(x) - eps` whenever
/// `lambda t < x <= t` for `t > t0`, with `0 < lambda < 1`.
pub fn check_backward_slow_decrease(
    trace: &IntegralTrace,
    eps: f64,
    lambda: f64,
    t0: f64,
    stride: usize,
) -> Result<CheckerOutcome> {
    check_eps(eps)?;
    if !(lambda > 0.0 && lambda < 1.0) {
        return Err(Error::InvalidWindow(format!("lambda must be in (0, 1), got {lambda}")));
    }
    let stride = stride.max(1);
    let times = trace.times();
    let s = trace.s_samples();
    let mut scanned = None;
    let mut pairs = 0usize;
    let mut witness = None;

    'outer: for i in (0..times.len()).step_by(stride) {
        let t = times[i];
        if !(t > t0) {
            continue;
        }
        let x_floor = lambda * t;
        // first sample strictly above lambda t
        let start = times.partition_point(|&v| v <= x_floor);
        if start < i {
            scanned = Some(match scanned {
                None => (t, t),
                Some((lo, _)) => (lo, t),
            });
        }
        for j in start..i {
            let x = times[j];
            pairs += 1;
            if let Some((l, m)) = first_violation(&s[j], &s[i], eps) {
                witness = Some(Witness { t, x: Some(x), alpha: trace.grid().levels()[l], margin: m });
                break 'outer;
            }
        }
    }
    let range = scanned.ok_or_else(|| {
        Error::EmptyScanRange(format!(
            "no sample pair lambda t < x <= t with t0 = {t0}, lambda = {lambda}"
        ))
    })?;
    let mut out = outcome("backward-slow-decrease", eps, Some(lambda), None, t0, range, stride, witness);
    out.notes = format!("{} ({} pairs scanned)", out.notes, pairs);
    Ok(out)
}

/// The lambda produced by the Landau argument for a slow-decrease budget H:
/// any window narrower than e^(eps/H) keeps the drop of s below eps.
pub fn landau_lambda(h: f64, eps: f64) -> f64 {
    (eps / h).exp()
}

/// Landau-type one-sided bound: `x f(x)` dominates the constant `u` for all
/// sampled `x > x0`. `u` must be a negative fuzzy number; the crisp zero is
/// also accepted (flagged as a boundary case in the notes).
pub fn check_landau(
    f: &FuzzyFunction,
    u: &FuzzyNumber,
    x0: f64,
    scan: &SamplingPlan,
) -> Result<CheckerOutcome> {
    scan.validate()?;
    if let Err(violation) = u.validate() {
        return Err(Error::InvalidLandauBound(violation.to_string()));
    }
    if !u.grid().same_as(f.grid()) {
        return Err(Error::GridMismatch);
    }
    let boundary = u.is_zero();
    if !boundary && !u.is_strictly_negative() {
        return Err(Error::InvalidLandauBound(
            "upper endpoints must be strictly below zero at every level (or u must be the crisp zero)"
                .to_string(),
        ));
    }
    if !(x0 >= 0.0) {
        return Err(Error::InvalidWindow(format!("x0 must be nonnegative, got {x0}")));
    }

    let n = scan.n_steps;
    let mut scanned = None;
    let mut witness = None;
    for i in 1..=n {
        let x = scan.t_max * (i as f64 / n as f64);
        if !(x > x0) {
            continue;
        }
        scanned = Some(match scanned {
            None => (x, x),
            Some((lo, _)) => (lo, x),
        });
        // x > x0 >= 0, so scaling does not swap endpoint roles
        let xf = f.eval_at(x)?.scale(x)?;
        if let Some((l, m)) = first_violation(u, &xf, 0.0) {
            witness = Some(Witness { t: x, x: None, alpha: f.grid().levels()[l], margin: m });
            break;
        }
    }
    let range = scanned.ok_or_else(|| {
        Error::EmptyScanRange(format!("no sampled x with x > {x0} and x <= {}", scan.t_max))
    })?;

    let budget = -u.lower()[0];
    let notes = if boundary {
        "boundary case: u is the crisp zero, so the bound only asserts x f(x) >= 0; the implied \
         slow-decrease budget H = 0 admits every lambda > 1"
            .to_string()
    } else {
        format!(
            "slow-decrease budget H = {budget}; lambda(eps) = e^(eps/H), e.g. lambda = {:.6} at eps = 0.5",
            landau_lambda(budget, 0.5)
        )
    };
    let mut out = outcome("landau", f64::NAN, None, None, x0, range, 1, witness);
    out.params.eps = None;
    out.notes = format!("{notes}; {}", verdict_note(&out.outcome));
    Ok(out)
}

fn verdict_note(v: &CheckerVerdict) -> &'static str {
    match v {
        CheckerVerdict::NoCounterexample => {
            "no counterexample at this resolution and range (not a proof of the asymptotic condition)"
        }
        CheckerVerdict::Counterexample => "counterexample found; witness is the scan-order-first violation",
    }
}

#[allow(clippy::too_many_arguments)]
fn outcome(
    name: &str,
    eps: f64,
    lambda: Option<f64>,
    ell: Option<f64>,
    t0: f64,
    range: (f64, f64),
    stride: usize,
    witness: Option<Witness>,
) -> CheckerOutcome {
    let verdict = if witness.is_some() {
        CheckerVerdict::Counterexample
    } else {
        CheckerVerdict::NoCounterexample
    };
    let notes = verdict_note(&verdict).to_string();
    CheckerOutcome {
        name: name.to_string(),
        params: CheckerParams {
            eps: if eps.is_nan() { None } else { Some(eps) },
            lambda,
            ell,
            t0,
            range,
            stride,
        },
        outcome: verdict,
        witness,
        notes,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::function;
    use crate::grid::AlphaGrid;
    use std::sync::Arc;

    fn grid() -> AlphaGrid {
        AlphaGrid::uniform(33).unwrap()
    }

    fn constant_trace(g: &AlphaGrid, plan: &SamplingPlan) -> IntegralTrace {
        let lower: Vec<f64> = g.levels().to_vec();
        let upper: Vec<f64> = g.levels().iter().map(|a| 2.0 - a).collect();
        let value = FuzzyNumber::from_endpoints(g.clone(), lower, upper).unwrap();
        IntegralTrace::from_parts(plan, "constant", vec![value; plan.n_steps + 1]).unwrap()
    }

    #[test]
    fn constant_trace_satisfies_every_condition() {
        let g = grid();
        let plan = SamplingPlan { t_max: 50.0, n_steps: 500, quad_tol: 1e-9 };
        let trace = constant_trace(&g, &plan);
        for eps in [0.1, 1.0] {
            let star = check_condition_star(&trace, eps, 2.0, 1.0).unwrap();
            assert_eq!(star.outcome, CheckerVerdict::NoCounterexample);
            let dstar = check_condition_doublestar(&trace, eps, 0.5, 1.0).unwrap();
            assert_eq!(dstar.outcome, CheckerVerdict::NoCounterexample);
            let sd = check_slow_decrease(&trace, eps, 1.5, 1.0, DEFAULT_STRIDE).unwrap();
            assert_eq!(sd.outcome, CheckerVerdict::NoCounterexample);
            let bsd = check_backward_slow_decrease(&trace, eps, 0.7, 1.0, DEFAULT_STRIDE).unwrap();
            assert_eq!(bsd.outcome, CheckerVerdict::NoCounterexample);
        }
    }

    #[test]
    fn oscillating_example_fails_slow_decrease_with_witness() {
        let g = grid();
        let plan = SamplingPlan { t_max: 60.0, n_steps: 1200, quad_tol: 1e-9 };
        let f = function::find("paper-example-1", &g).unwrap();
        let trace = IntegralTrace::build(&f, &plan).unwrap();
        let out = check_slow_decrease(&trace, 0.5, 1.5, 1.0, DEFAULT_STRIDE).unwrap();
        assert_eq!(out.outcome, CheckerVerdict::Counterexample);
        let w = out.witness.unwrap();
        assert!(w.margin < 0.0);
        let x = w.x.unwrap();
        assert!(w.t < x && x <= 1.5 * w.t * (1.0 + 1e-9));
    }

    #[test]
    fn monotone_example_passes_all_checkers_at_small_scale() {
        let g = grid();
        let plan = SamplingPlan { t_max: 60.0, n_steps: 1200, quad_tol: 1e-9 };
        let f = function::find("paper-example-2", &g).unwrap();
        let trace = IntegralTrace::build(&f, &plan).unwrap();
        assert_eq!(
            check_slow_decrease(&trace, 0.5, 1.5, 1.0, DEFAULT_STRIDE).unwrap().outcome,
            CheckerVerdict::NoCounterexample
        );
        assert_eq!(
            check_backward_slow_decrease(&trace, 0.5, 0.7, 1.0, DEFAULT_STRIDE).unwrap().outcome,
            CheckerVerdict::NoCounterexample
        );
        assert_eq!(
            check_condition_star(&trace, 0.5, 2.0, 1.0).unwrap().outcome,
            CheckerVerdict::NoCounterexample
        );
        assert_eq!(
            check_condition_doublestar(&trace, 0.5, 0.5, 1.0).unwrap().outcome,
            CheckerVerdict::NoCounterexample
        );
    }

    // closed-form s of the first example, per endpoint
    fn ex1_s(t: f64, alpha: f64, upper: bool) -> f64 {
        let c = if upper { 2.0 - alpha } else { alpha };
        t.sin() + c * (1.0 - 1.0 / (t + 1.0))
    }

    #[test]
    fn oscillating_example_fails_averaged_forward_condition_at_small_eps() {
        let g = grid();
        let plan = SamplingPlan { t_max: 60.0, n_steps: 1200, quad_tol: 1e-9 };
        let f = function::find("paper-example-1", &g).unwrap();
        let trace = IntegralTrace::build(&f, &plan).unwrap();
        let (eps, lambda) = (0.1, 2.0);
        let out = check_condition_star(&trace, eps, lambda, 1.0).unwrap();
        assert_eq!(out.outcome, CheckerVerdict::Counterexample);
        let w = out.witness.unwrap();
        assert!(w.margin < 0.0);

        // closed forms confirm the violation at the witness window start
        let t = w.t;
        let mean = |alpha: f64, upper: bool| {
            let c = if upper { 2.0 - alpha } else { alpha };
            let log_part = ((lambda * t + 1.0) / (t + 1.0)).ln();
            c * (1.0 - log_part / ((lambda - 1.0) * t))
                + (t.cos() - (lambda * t).cos()) / ((lambda - 1.0) * t)
        };
        let worst = g
            .levels()
            .iter()
            .flat_map(|&a| {
                [mean(a, false) - (ex1_s(t, a, false) - eps), mean(a, true) - (ex1_s(t, a, true) - eps)]
            })
            .fold(f64::INFINITY, f64::min);
        assert!(worst < 1e-3, "closed-form margin {worst} does not confirm the witness");
    }

    #[test]
    fn oscillating_example_fails_averaged_backward_condition_at_small_eps() {
        let g = grid();
        let plan = SamplingPlan { t_max: 60.0, n_steps: 1200, quad_tol: 1e-9 };
        let f = function::find("paper-example-1", &g).unwrap();
        let trace = IntegralTrace::build(&f, &plan).unwrap();
        let (eps, ell) = (0.1, 0.5);
        let out = check_condition_doublestar(&trace, eps, ell, 1.0).unwrap();
        assert_eq!(out.outcome, CheckerVerdict::Counterexample);
        let w = out.witness.unwrap();
        assert!(w.margin < 0.0);

        let t = w.t;
        let mean = |alpha: f64, upper: bool| {
            let c = if upper { 2.0 - alpha } else { alpha };
            let width = t - ell * t;
            let log_part = ((t + 1.0) / (ell * t + 1.0)).ln();
            c * (1.0 - log_part / width) + ((ell * t).cos() - t.cos()) / width
        };
        let worst = g
            .levels()
            .iter()
            .flat_map(|&a| {
                [ex1_s(t, a, false) + eps - mean(a, false), ex1_s(t, a, true) + eps - mean(a, true)]
            })
            .fold(f64::INFINITY, f64::min);
        assert!(worst < 1e-3, "closed-form margin {worst} does not confirm the witness");
    }

    #[test]
    fn oscillating_example_fails_backward_slow_decrease() {
        let g = grid();
        let plan = SamplingPlan { t_max: 60.0, n_steps: 1200, quad_tol: 1e-9 };
        let f = function::find("paper-example-1", &g).unwrap();
        let trace = IntegralTrace::build(&f, &plan).unwrap();
        let out = check_backward_slow_decrease(&trace, 0.5, 0.5, 1.0, DEFAULT_STRIDE).unwrap();
        assert_eq!(out.outcome, CheckerVerdict::Counterexample);
        let w = out.witness.unwrap();
        let x = w.x.unwrap();
        assert!(0.5 * w.t < x && x <= w.t);
        // closed forms confirm: s rose by more than eps between x and t
        let worst = g
            .levels()
            .iter()
            .flat_map(|&a| {
                [
                    ex1_s(w.t, a, false) - ex1_s(x, a, false) + 0.5,
                    ex1_s(w.t, a, true) - ex1_s(x, a, true) + 0.5,
                ]
            })
            .fold(f64::INFINITY, f64::min);
        assert!(worst < 1e-6, "closed-form margin {worst}");
    }

    #[test]
    fn landau_bound_examples() {
        let g = grid();
        let scan = SamplingPlan { t_max: 50.0, n_steps: 500, quad_tol: 1e-9 };

        // x * (-1/(1+x)) stays in (-1, 0], so u = -1 works
        let f = FuzzyFunction::from_closures(
            "decaying-negative",
            &g,
            Arc::new(|x, _| Ok(-1.0 / (1.0 + x))),
            Arc::new(|x, _| Ok(-1.0 / (1.0 + x))),
        );
        let u = FuzzyNumber::crisp(-1.0, &g).unwrap();
        let out = check_landau(&f, &u, 0.0, &scan).unwrap();
        assert_eq!(out.outcome, CheckerVerdict::NoCounterexample);
        assert!(out.notes.contains("H = 1"));

        // x * (-1) drops below -1 for x > 1
        let f = FuzzyFunction::crisp_constant(-1.0, &g).unwrap();
        let out = check_landau(&f, &u, 0.0, &scan).unwrap();
        assert_eq!(out.outcome, CheckerVerdict::Counterexample);
        let w = out.witness.unwrap();
        assert!(w.t > 1.0);
        assert!(w.margin < 0.0);
    }

    use crate::function::FuzzyFunction;

    #[test]
    fn landau_zero_bound_is_boundary_flagged() {
        let g = grid();
        let scan = SamplingPlan { t_max: 50.0, n_steps: 500, quad_tol: 1e-9 };
        let f = function::find("paper-example-2", &g).unwrap();
        let zero = FuzzyNumber::crisp(0.0, &g).unwrap();
        let out = check_landau(&f, &zero, 0.0, &scan).unwrap();
        assert_eq!(out.outcome, CheckerVerdict::NoCounterexample);
        assert!(out.notes.contains("boundary"));
    }

    #[test]
    fn landau_rejects_non_negative_bounds() {
        let g = grid();
        let scan = SamplingPlan { t_max: 10.0, n_steps: 100, quad_tol: 1e-9 };
        let f = function::find("paper-example-2", &g).unwrap();
        let u = FuzzyNumber::crisp(0.5, &g).unwrap();
        assert!(matches!(check_landau(&f, &u, 0.0, &scan), Err(Error::InvalidLandauBound(_))));
        // mixed sign: lower negative but upper reaches zero at alpha = 1
        let mixed = FuzzyNumber::from_endpoints(
            g.clone(),
            g.levels().iter().map(|a| -2.0 + a).collect(),
            g.levels().iter().map(|a| -a).collect(),
        )
        .unwrap();
        assert!(matches!(check_landau(&f, &mixed, 0.0, &scan), Err(Error::InvalidLandauBound(_))));
    }

    #[test]
    fn empty_scan_ranges_error() {
        let g = grid();
        let plan = SamplingPlan { t_max: 10.0, n_steps: 100, quad_tol: 1e-9 };
        let trace = constant_trace(&g, &plan);
        assert!(matches!(
            check_condition_star(&trace, 0.5, 2.0, 10.0),
            Err(Error::EmptyScanRange(_))
        ));
        assert!(matches!(
            check_slow_decrease(&trace, 0.5, 1.5, 10.0, 1),
            Err(Error::EmptyScanRange(_))
        ));
        let f = function::find("paper-example-2", &g).unwrap();
        let zero = FuzzyNumber::crisp(0.0, &g).unwrap();
        assert!(matches!(
            check_landau(&f, &zero, 10.0, &plan),
            Err(Error::EmptyScanRange(_))
        ));
    }

    #[test]
    fn bad_parameters_error() {
        let g = grid();
        let plan = SamplingPlan { t_max: 10.0, n_steps: 100, quad_tol: 1e-9 };
        let trace = constant_trace(&g, &plan);
        assert!(check_condition_star(&trace, 0.0, 2.0, 1.0).is_err());
        assert!(check_condition_star(&trace, 0.5, 1.0, 1.0).is_err());
        assert!(check_condition_doublestar(&trace, 0.5, 1.2, 1.0).is_err());
        assert!(check_backward_slow_decrease(&trace, 0.5, 1.2, 1.0, 1).is_err());
    }
}
