//! Numerical limit estimation in the metric D and classification of a fuzzy
//! integral as convergent / Cesàro summable / neither.
//!
//! Finite-scale semantics: checkpoints are dyadic (t, 2t, 4t, ...), echoing
//! the multiplicative window structure of the summability conditions.
//! "Diverged" requires sustained growth past a magnitude threshold; bounded
//! oscillation reports inconclusive, with the oscillation amplitude in
//! `residual`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::function::FuzzyFunction;
use crate::integrate::{IntegralTrace, SamplingPlan};
use crate::number::FuzzyNumber;
use crate::tauberian::{CheckerOutcome, CheckerParams, CheckerVerdict};

/// Default analysis tolerance for limit estimation. Cesàro means with
/// ln(t)/t tails have trailing dyadic increments around 1.4e-2 at the
/// default trace scale; 5e-2 registers them as converged while oscillations
/// of order one stay inconclusive.
pub const DEFAULT_ANALYSIS_TOL: f64 = 5e-2;

/// Endpoint magnitude a series must sustain growth past before it is called
/// divergent.
pub const DEFAULT_DIVERGENCE_THRESHOLD: f64 = 1e6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LimitStatus {
    Converged,
    Diverged,
    Inconclusive,
}

/// Outcome of limit estimation over a (t, value) series.
#[derive(Debug, Clone, Serialize)]
pub struct LimitEstimate {
    pub status: LimitStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<FuzzyNumber>,
    /// Last Cauchy increment in D between dyadic checkpoints.
    pub residual: f64,
    /// Largest t examined.
    pub scale: f64,
}

/// Estimates the limit of a series of fuzzy numbers with the default
/// divergence threshold.
pub fn estimate_limit(series: &[(f64, FuzzyNumber)], tol: f64) -> Result<LimitEstimate> {
    estimate_limit_with(series, tol, DEFAULT_DIVERGENCE_THRESHOLD)
}

/// Estimates the limit of a series by examining dyadic checkpoints t, 2t,
/// 4t, ... from the first positive abscissa.
///
/// Converged: the checkpoint increment in D falls below `tol` and the last
/// three increments are non-increasing; the value is the last sample of the
/// series. Diverged: the endpoint sup-norm (or the increment) grows strictly
/// over the last three checkpoints and the magnitude has passed
/// `divergence_threshold`. Anything else is inconclusive.
pub fn estimate_limit_with(
    series: &[(f64, FuzzyNumber)],
    tol: f64,
    divergence_threshold: f64,
) -> Result<LimitEstimate> {
    if !(tol > 0.0) || !tol.is_finite() {
        return Err(Error::InvalidPlan(format!("tolerance must be positive and finite, got {tol}")));
    }
    if series.len() < 8 {
        return Err(Error::TooFewSamples { needed: 8, got: series.len() });
    }
    for w in series.windows(2) {
        if !(w[1].0 > w[0].0) {
            return Err(Error::NonMonotoneSeries);
        }
    }
    let first_positive = series
        .iter()
        .position(|(t, _)| *t > 0.0)
        .ok_or_else(|| Error::EmptyScanRange("series has no positive abscissae".into()))?;

    // nearest sample at each dyadic checkpoint
    let t_last = series.last().unwrap().0;
    let mut checkpoint_idx = Vec::new();
    let mut target = series[first_positive].0;
    while target <= t_last * (1.0 + 1e-12) {
        let idx = nearest_by_t(series, target);
        if checkpoint_idx.last() != Some(&idx) {
            checkpoint_idx.push(idx);
        }
        target *= 2.0;
    }

    let increments: Vec<f64> = checkpoint_idx
        .windows(2)
        .map(|w| series[w[1]].1.distance(&series[w[0]].1))
        .collect::<Result<_>>()?;
    let scale = t_last;
    let last_sample = &series.last().unwrap().1;

    let k = increments.len();
    if k == 0 {
        return Ok(LimitEstimate { status: LimitStatus::Inconclusive, value: None, residual: 0.0, scale });
    }
    let residual = increments[k - 1];

    let trailing_nonincreasing = if k >= 3 {
        increments[k - 1] <= increments[k - 2] && increments[k - 2] <= increments[k - 3]
    } else {
        increments.iter().all(|d| *d <= tol)
    };
    if residual <= tol && trailing_nonincreasing {
        return Ok(LimitEstimate {
            status: LimitStatus::Converged,
            value: Some(last_sample.clone()),
            residual,
            scale,
        });
    }

    if k >= 3 {
        let mags: Vec<f64> = checkpoint_idx
            .iter()
            .map(|&i| sup_norm(&series[i].1))
            .collect();
        let m = mags.len();
        let magnitude_growing = mags[m - 1] > mags[m - 2] && mags[m - 2] > mags[m - 3];
        let increment_growing = increments[k - 1] > increments[k - 2] && increments[k - 2] > increments[k - 3];
        if mags[m - 1] > divergence_threshold && (magnitude_growing || increment_growing) {
            return Ok(LimitEstimate { status: LimitStatus::Diverged, value: None, residual, scale });
        }
    }

    Ok(LimitEstimate { status: LimitStatus::Inconclusive, value: None, residual, scale })
}

fn sup_norm(v: &FuzzyNumber) -> f64 {
    let mut m = 0.0f64;
    for i in 0..v.lower().len() {
        m = m.max(v.lower()[i].abs()).max(v.upper()[i].abs());
    }
    m
}

fn nearest_by_t(series: &[(f64, FuzzyNumber)], target: f64) -> usize {
    // series is strictly increasing; binary search then compare neighbours
    let pos = series.partition_point(|(t, _)| *t < target);
    let mut best = pos.saturating_sub(1);
    for idx in [pos.saturating_sub(1), pos.min(series.len() - 1)] {
        if (series[idx].0 - target).abs() < (series[best].0 - target).abs() {
            best = idx;
        }
    }
    best
}

/// Plan and tolerance echo embedded in a report.
#[derive(Debug, Clone, Serialize)]
pub struct PlanSummary {
    pub t_max: f64,
    pub n_steps: usize,
    pub quad_tol: f64,
    pub grid_levels: usize,
    pub tol: f64,
}

/// Full classification of one function: limit estimates for s and sigma and
/// any named cross-check records.
#[derive(Debug, Clone, Serialize)]
pub struct AnalysisReport {
    pub function: String,
    pub plan: PlanSummary,
    pub integral_limit: LimitEstimate,
    pub cesaro_limit: LimitEstimate,
    pub checkers: Vec<CheckerOutcome>,
}

/// Builds the trace of `f`, estimates the limits of the s- and sigma-series,
/// and cross-checks that when both converge the values agree (convergence
/// implies Cesàro summability to the same limit, never the reverse).
pub fn classify(f: &FuzzyFunction, plan: &SamplingPlan, tol: f64) -> Result<AnalysisReport> {
    let trace = IntegralTrace::build(f, plan)?;
    classify_trace(f.name(), &trace, tol)
}

/// Classification over an already-built trace.
pub fn classify_trace(name: &str, trace: &IntegralTrace, tol: f64) -> Result<AnalysisReport> {
    let integral_limit = estimate_limit(&trace.s_series(), tol)?;
    let cesaro_limit = estimate_limit(&trace.sigma_series(), tol)?;

    let mut checkers = Vec::new();
    if let (Some(s_value), Some(sigma_value)) = (&integral_limit.value, &cesaro_limit.value) {
        let d = s_value.distance(sigma_value)?;
        let pass = d <= 2.0 * tol;
        checkers.push(CheckerOutcome {
            name: "regularity-consistency".into(),
            params: CheckerParams {
                eps: None,
                lambda: None,
                ell: None,
                t0: 0.0,
                range: (0.0, trace.plan().t_max),
                stride: 1,
            },
            outcome: if pass { CheckerVerdict::NoCounterexample } else { CheckerVerdict::Counterexample },
            witness: None,
            notes: format!("D(s limit, sigma limit) = {d:.3e}, allowed 2*tol = {:.3e}", 2.0 * tol),
        });
    }

    Ok(AnalysisReport {
        function: name.to_string(),
        plan: PlanSummary {
            t_max: trace.plan().t_max,
            n_steps: trace.plan().n_steps,
            quad_tol: trace.plan().quad_tol,
            grid_levels: trace.grid().len(),
            tol,
        },
        integral_limit,
        cesaro_limit,
        checkers,
    })
}

/// The Cesàro mean of the function itself: the series (t, (1/t) * integral
/// of f over [0, t]); the mean construction applied directly to f instead of
/// its integral function.
pub fn cesaro_mean_of_function(f: &FuzzyFunction, plan: &SamplingPlan) -> Result<Vec<(f64, FuzzyNumber)>> {
    let trace = IntegralTrace::build(f, plan)?;
    let mut series = Vec::with_capacity(plan.n_steps);
    for (i, &t) in trace.times().iter().enumerate().skip(1) {
        series.push((t, trace.s_samples()[i].scale(1.0 / t)?));
    }
    Ok(series)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::function;
    use crate::grid::AlphaGrid;

    fn grid() -> AlphaGrid {
        AlphaGrid::uniform(33).unwrap()
    }

    fn crisp_series(values: &[(f64, f64)], g: &AlphaGrid) -> Vec<(f64, FuzzyNumber)> {
        values
            .iter()
            .map(|&(t, v)| (t, FuzzyNumber::crisp(v, g).unwrap()))
            .collect()
    }

    #[test]
    fn constant_series_converges_with_zero_residual() {
        let g = grid();
        let series: Vec<(f64, FuzzyNumber)> = (0..=10)
            .map(|i| (2.0f64.powi(i), FuzzyNumber::crisp(3.0, &g).unwrap()))
            .collect();
        let est = estimate_limit(&series, 1e-6).unwrap();
        assert_eq!(est.status, LimitStatus::Converged);
        assert_eq!(est.residual, 0.0);
        assert_eq!(est.value.unwrap(), FuzzyNumber::crisp(3.0, &g).unwrap());
        assert_eq!(est.scale, 1024.0);
    }

    #[test]
    fn input_validation() {
        let g = grid();
        let short = crisp_series(&[(1.0, 0.0), (2.0, 0.0)], &g);
        assert!(matches!(estimate_limit(&short, 1e-3), Err(Error::TooFewSamples { .. })));

        let mut bad: Vec<(f64, FuzzyNumber)> = (0..10)
            .map(|i| (i as f64, FuzzyNumber::crisp(0.0, &g).unwrap()))
            .collect();
        bad[5].0 = 1.0;
        assert!(matches!(estimate_limit(&bad, 1e-3), Err(Error::NonMonotoneSeries)));

        let ok = crisp_series(&[(1.0, 0.0); 1], &g);
        assert!(estimate_limit(&ok, 0.0).is_err());
    }

    #[test]
    fn sustained_growth_past_threshold_is_divergent() {
        let g = grid();
        let series: Vec<(f64, FuzzyNumber)> = (0..=12)
            .map(|i| (2.0f64.powi(i), FuzzyNumber::crisp(10.0f64.powi(i), &g).unwrap()))
            .collect();
        let est = estimate_limit(&series, 1e-3).unwrap();
        assert_eq!(est.status, LimitStatus::Diverged);
        assert!(est.value.is_none());
    }

    #[test]
    fn bounded_growth_stays_inconclusive() {
        // grows steadily but never past the magnitude threshold
        let g = grid();
        let series: Vec<(f64, FuzzyNumber)> = (0..=12)
            .map(|i| (2.0f64.powi(i), FuzzyNumber::crisp(2.0f64.powi(i), &g).unwrap()))
            .collect();
        let est = estimate_limit(&series, 1e-3).unwrap();
        assert_eq!(est.status, LimitStatus::Inconclusive);
    }

    #[test]
    fn bounded_oscillation_is_inconclusive_with_amplitude_residual() {
        let g = grid();
        let series: Vec<(f64, FuzzyNumber)> = (0..=12)
            .map(|i| (2.0f64.powi(i), FuzzyNumber::crisp((i % 2) as f64, &g).unwrap()))
            .collect();
        let est = estimate_limit(&series, 1e-3).unwrap();
        assert_eq!(est.status, LimitStatus::Inconclusive);
        assert_eq!(est.residual, 1.0);
    }

    #[test]
    fn monotone_in_tolerance() {
        let g = grid();
        let series: Vec<(f64, FuzzyNumber)> = (0..=14)
            .map(|i| (2.0f64.powi(i), FuzzyNumber::crisp(1.0 / (1.0 + i as f64), &g).unwrap()))
            .collect();
        let mut converged_seen = false;
        for tol in [1e-4, 1e-3, 1e-2, 1e-1, 1.0] {
            let est = estimate_limit(&series, tol).unwrap();
            if converged_seen {
                assert_eq!(est.status, LimitStatus::Converged, "lost convergence at tol = {tol}");
            }
            if est.status == LimitStatus::Converged {
                assert!(est.residual <= tol);
                converged_seen = true;
            }
        }
        assert!(converged_seen);
    }

    #[test]
    fn classify_convergent_catalog_function() {
        let g = grid();
        let f = function::find("convergent-1", &g).unwrap();
        let plan = SamplingPlan { t_max: 400.0, n_steps: 8000, quad_tol: 1e-9 };
        let report = classify(&f, &plan, DEFAULT_ANALYSIS_TOL).unwrap();
        assert_eq!(report.integral_limit.status, LimitStatus::Converged);
        assert_eq!(report.cesaro_limit.status, LimitStatus::Converged);
        assert_eq!(report.checkers.len(), 1);
        assert_eq!(report.checkers[0].name, "regularity-consistency");
        assert!(matches!(report.checkers[0].outcome, CheckerVerdict::NoCounterexample));
        // both limits near levels [alpha, 2 - alpha]
        let u = FuzzyNumber::from_endpoints(
            g.clone(),
            g.levels().to_vec(),
            g.levels().iter().map(|a| 2.0 - a).collect(),
        )
        .unwrap();
        let s_val = report.integral_limit.value.unwrap();
        let sig = report.cesaro_limit.value.unwrap();
        assert!(s_val.distance(&u).unwrap() < DEFAULT_ANALYSIS_TOL);
        assert!(sig.distance(&u).unwrap() < DEFAULT_ANALYSIS_TOL);
    }

    #[test]
    fn classify_growing_example_finds_no_limits() {
        let g = grid();
        let f = function::find("paper-example-2", &g).unwrap();
        let plan = SamplingPlan { t_max: 100.0, n_steps: 2000, quad_tol: 1e-9 };
        let report = classify(&f, &plan, DEFAULT_ANALYSIS_TOL).unwrap();
        assert_ne!(report.integral_limit.status, LimitStatus::Converged);
        assert_ne!(report.cesaro_limit.status, LimitStatus::Converged);
        assert!(report.checkers.is_empty());
    }

    #[test]
    fn function_summability_view_applies_checkers_to_f_itself() {
        // Treating the function samples as the "integral function" runs the
        // checkers on f in place of s. The second example's running mean has
        // the closed form level * (2 + (cos t - 1)/t), yet f itself
        // oscillates by 2 at the widest level, which the slow-decrease
        // checker on the sample trace picks up.
        use crate::integrate::IntegralTrace;
        use crate::tauberian::{check_slow_decrease, CheckerVerdict, DEFAULT_STRIDE};

        let g = grid();
        let f = function::find("paper-example-2", &g).unwrap();
        let plan = SamplingPlan { t_max: 100.0, n_steps: 2000, quad_tol: 1e-9 };

        let series = cesaro_mean_of_function(&f, &plan).unwrap();
        for &(t, ref v) in series.iter().filter(|(t, _)| *t >= 1.0) {
            let base = 2.0 + (t.cos() - 1.0) / t;
            for (l, &a) in g.levels().iter().enumerate() {
                assert!((v.lower()[l] - a * base).abs() < 1e-6, "t = {t}");
                assert!((v.upper()[l] - (2.0 - a) * base).abs() < 1e-6);
            }
        }

        let f_trace = IntegralTrace::from_function_samples(&f, &plan).unwrap();
        assert!(f_trace.f_name().contains("as-values"));
        let out = check_slow_decrease(&f_trace, 0.5, 1.5, 1.0, DEFAULT_STRIDE).unwrap();
        assert_eq!(out.outcome, CheckerVerdict::Counterexample);
        let w = out.witness.unwrap();
        // oracle: f's own endpoint drop at the witness exceeds eps
        let x = w.x.unwrap();
        let drop = g
            .levels()
            .iter()
            .flat_map(|&a| {
                let (ft, fx) = (2.0 - w.t.sin(), 2.0 - x.sin());
                [(fx - ft) * a, (fx - ft) * (2.0 - a)]
            })
            .fold(f64::INFINITY, f64::min);
        assert!(drop < -0.5 + 1e-9, "witness drop {drop}");
    }

    #[test]
    fn classify_is_deterministic() {
        let g = grid();
        let f = function::find("paper-example-1", &g).unwrap();
        let plan = SamplingPlan { t_max: 50.0, n_steps: 1000, quad_tol: 1e-9 };
        let a = serde_json::to_string(&classify(&f, &plan, 1e-2).unwrap()).unwrap();
        let b = serde_json::to_string(&classify(&f, &plan, 1e-2).unwrap()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn function_mean_of_crisp_constant_is_the_constant() {
        let g = grid();
        let f = function::FuzzyFunction::crisp_constant(2.5, &g).unwrap();
        let plan = SamplingPlan { t_max: 20.0, n_steps: 200, quad_tol: 1e-10 };
        let series = cesaro_mean_of_function(&f, &plan).unwrap();
        let expect = FuzzyNumber::crisp(2.5, &g).unwrap();
        for (_, v) in &series {
            assert!(v.distance(&expect).unwrap() < 1e-9);
        }
    }

    #[test]
    fn function_mean_matches_scaled_integral_closed_form() {
        let g = grid();
        let f = function::find("paper-example-1", &g).unwrap();
        let plan = SamplingPlan { t_max: 50.0, n_steps: 1000, quad_tol: 1e-9 };
        let series = cesaro_mean_of_function(&f, &plan).unwrap();
        for &(t, ref v) in series.iter().filter(|(t, _)| *t >= 1.0) {
            let base = 1.0 - 1.0 / (t + 1.0);
            for (l, &a) in g.levels().iter().enumerate() {
                let expect_lower = (t.sin() + a * base) / t;
                let expect_upper = (t.sin() + (2.0 - a) * base) / t;
                assert!((v.lower()[l] - expect_lower).abs() < 1e-6, "t = {t}");
                assert!((v.upper()[l] - expect_upper).abs() < 1e-6);
            }
        }
    }

    #[test]
    fn function_with_pointwise_limit_is_mean_summable_to_it() {
        // lower alpha + 1/(1+x), upper (2 - alpha) + 1/(1+x): pointwise limit
        // has levels [alpha, 2 - alpha] and the running mean converges there too.
        use std::sync::Arc;
        let g = grid();
        let f = function::FuzzyFunction::from_closures(
            "shifted-limit",
            &g,
            Arc::new(|x, a| Ok(a + 1.0 / (1.0 + x))),
            Arc::new(|x, a| Ok((2.0 - a) + 1.0 / (1.0 + x))),
        );
        let plan = SamplingPlan { t_max: 500.0, n_steps: 5000, quad_tol: 1e-9 };
        let series = cesaro_mean_of_function(&f, &plan).unwrap();

        // closed form of the mean: level + ln(1+t)/t
        for &(t, ref v) in series.iter().filter(|(t, _)| *t >= 1.0) {
            let shift = (1.0 + t).ln() / t;
            for (l, &a) in g.levels().iter().enumerate() {
                assert!((v.lower()[l] - (a + shift)).abs() < 1e-6);
                assert!((v.upper()[l] - ((2.0 - a) + shift)).abs() < 1e-6);
            }
        }

        let est = estimate_limit(&series, DEFAULT_ANALYSIS_TOL).unwrap();
        assert_eq!(est.status, LimitStatus::Converged);
        let limit = FuzzyNumber::from_endpoints(
            g.clone(),
            g.levels().to_vec(),
            g.levels().iter().map(|a| 2.0 - a).collect(),
        )
        .unwrap();
        assert!(est.value.unwrap().distance(&limit).unwrap() < 2.0 * DEFAULT_ANALYSIS_TOL);
    }
}
