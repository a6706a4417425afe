//! Endpoint-wise fuzzy Riemann integration, the integral function s(t), the
//! Cesàro means sigma(t), and deferred means over multiplicative windows.
//!
//! Quadrature is adaptive composite Simpson. All alpha-levels are integrated
//! on one shared panel partition (a panel splits while any level's error
//! estimate exceeds its share), which keeps the endpoint families monotone in
//! alpha exactly: every accepted panel value is a positive combination of
//! validated node samples. The integrand is validated at every quadrature
//! node.
//!
//! Level-wise accumulation is strictly left to right, so results do not
//! depend on how work might be scheduled.

use serde::ser::{SerializeSeq, SerializeStruct};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::function::FuzzyFunction;
use crate::grid::AlphaGrid;
use crate::number::FuzzyNumber;

/// Uniform t-grid and quadrature tolerance for trace construction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SamplingPlan {
    pub t_max: f64,
    pub n_steps: usize,
    /// Absolute quadrature error target per endpoint over the whole trace.
    pub quad_tol: f64,
}

impl Default for SamplingPlan {
    fn default() -> Self {
        // Resolves the oscillations of the built-in examples (period 2*pi)
        // with more than 300 samples per period.
        Self { t_max: 1000.0, n_steps: 20_000, quad_tol: 1e-9 }
    }
}

impl SamplingPlan {
    pub fn validate(&self) -> Result<()> {
        if !(self.t_max > 0.0) || !self.t_max.is_finite() {
            return Err(Error::InvalidPlan(format!("t_max must be positive and finite, got {}", self.t_max)));
        }
        if self.n_steps < 2 {
            return Err(Error::InvalidPlan(format!("n_steps must be at least 2, got {}", self.n_steps)));
        }
        if !(self.quad_tol > 0.0) || !self.quad_tol.is_finite() {
            return Err(Error::InvalidPlan(format!(
                "quad_tol must be positive and finite, got {}",
                self.quad_tol
            )));
        }
        Ok(())
    }

    /// Nominal sample spacing.
    pub fn step(&self) -> f64 {
        self.t_max / self.n_steps as f64
    }
}

// ---------------------------------------------------------------------------
// adaptive Simpson over all levels at once

const MAX_DEPTH: u32 = 48;
const PANEL_BUDGET: usize = 4_000_000;

struct Panel {
    a: f64,
    b: f64,
    fa: FuzzyNumber,
    fm: FuzzyNumber,
    fb: FuzzyNumber,
    whole_lower: Vec<f64>,
    whole_upper: Vec<f64>,
    tol: f64,
    depth: u32,
}

fn simpson_arrays(a: f64, b: f64, fa: &FuzzyNumber, fm: &FuzzyNumber, fb: &FuzzyNumber) -> (Vec<f64>, Vec<f64>) {
    let c = (b - a) / 6.0;
    let n = fa.lower().len();
    let mut lower = Vec::with_capacity(n);
    let mut upper = Vec::with_capacity(n);
    for i in 0..n {
        lower.push(c * (fa.lower()[i] + 4.0 * fm.lower()[i] + fb.lower()[i]));
        upper.push(c * (fa.upper()[i] + 4.0 * fm.upper()[i] + fb.upper()[i]));
    }
    (lower, upper)
}

/// Integrates `f` over `[a, b]` with per-level absolute target `tol`,
/// adding the result onto `acc_lower`/`acc_upper` (left-to-right order).
/// `fa`/`fb` are the already-sampled boundary values.
#[allow(clippy::too_many_arguments)]
fn adaptive_simpson_into(
    f: &FuzzyFunction,
    a: f64,
    b: f64,
    tol: f64,
    fa: FuzzyNumber,
    fb: FuzzyNumber,
    acc_lower: &mut [f64],
    acc_upper: &mut [f64],
) -> Result<()> {
    let m0 = 0.5 * (a + b);
    let fm0 = f.eval_at(m0)?;
    let (w_l, w_u) = simpson_arrays(a, b, &fa, &fm0, &fb);
    let mut stack = vec![Panel {
        a,
        b,
        fa,
        fm: fm0,
        fb,
        whole_lower: w_l,
        whole_upper: w_u,
        tol,
        depth: 0,
    }];
    let mut processed = 0usize;

    while let Some(p) = stack.pop() {
        processed += 1;
        if processed > PANEL_BUDGET {
            return Err(Error::QuadratureBudget { a, b, tol });
        }
        let m = 0.5 * (p.a + p.b);
        let lm = 0.5 * (p.a + m);
        let rm = 0.5 * (m + p.b);
        let flm = f.eval_at(lm)?;
        let frm = f.eval_at(rm)?;
        let (sl_l, sl_u) = simpson_arrays(p.a, m, &p.fa, &flm, &p.fm);
        let (sr_l, sr_u) = simpson_arrays(m, p.b, &p.fm, &frm, &p.fb);

        let n = sl_l.len();
        let mut accept = true;
        for i in 0..n {
            let est_l = (sl_l[i] + sr_l[i] - p.whole_lower[i]) / 15.0;
            let est_u = (sl_u[i] + sr_u[i] - p.whole_upper[i]) / 15.0;
            if est_l.abs() > p.tol || est_u.abs() > p.tol {
                accept = false;
                break;
            }
        }

        if accept {
            for i in 0..n {
                let s2_l = sl_l[i] + sr_l[i];
                let s2_u = sl_u[i] + sr_u[i];
                acc_lower[i] += s2_l + (s2_l - p.whole_lower[i]) / 15.0;
                acc_upper[i] += s2_u + (s2_u - p.whole_upper[i]) / 15.0;
            }
            continue;
        }
        if p.depth >= MAX_DEPTH || !(p.a < m && m < p.b) {
            return Err(Error::QuadratureBudget { a, b, tol });
        }
        let child_tol = p.tol / 2.0;
        // push right first so the left half is processed first
        stack.push(Panel {
            a: m,
            b: p.b,
            fa: p.fm.clone(),
            fm: frm,
            fb: p.fb,
            whole_lower: sr_l,
            whole_upper: sr_u,
            tol: child_tol,
            depth: p.depth + 1,
        });
        stack.push(Panel {
            a: p.a,
            b: m,
            fa: p.fa,
            fm: flm,
            fb: p.fm,
            whole_lower: sl_l,
            whole_upper: sl_u,
            tol: child_tol,
            depth: p.depth + 1,
        });
    }
    Ok(())
}

/// Fuzzy Riemann integral of `f` over `[a, b]`: each endpoint family is
/// integrated independently (on a shared adaptive partition) to absolute
/// tolerance `tol`, and the result is validated.
pub fn integrate_on(f: &FuzzyFunction, a: f64, b: f64, tol: f64) -> Result<FuzzyNumber> {
    if !(tol > 0.0) || !tol.is_finite() {
        return Err(Error::InvalidPlan(format!("tolerance must be positive and finite, got {tol}")));
    }
    if a > b {
        return Err(Error::ReversedBounds { a, b });
    }
    if a < f.domain_start() {
        return Err(Error::OutOfDomain { x: a, domain_start: f.domain_start() });
    }
    let n = f.grid().len();
    let mut acc_lower = vec![0.0; n];
    let mut acc_upper = vec![0.0; n];
    if a < b {
        // initial split into panels of width about one, so oscillations wider
        // than a panel cannot fool the error estimate
        let width = b - a;
        let n0 = (width.ceil() as usize).clamp(1, 4096);
        let mut x_prev = a;
        let mut f_prev = f.eval_at(a)?;
        for j in 1..=n0 {
            let x_next = if j == n0 { b } else { a + width * (j as f64 / n0 as f64) };
            let f_next = f.eval_at(x_next)?;
            let panel_tol = tol * ((x_next - x_prev) / width);
            adaptive_simpson_into(
                f,
                x_prev,
                x_next,
                panel_tol,
                f_prev,
                f_next.clone(),
                &mut acc_lower,
                &mut acc_upper,
            )?;
            x_prev = x_next;
            f_prev = f_next;
        }
    }
    let value = FuzzyNumber::from_endpoints(f.grid().clone(), acc_lower, acc_upper)?;
    if let Err(violation) = value.validate() {
        let alpha = f.grid().levels()[violation.index()];
        return Err(Error::PointwiseInvariant { x: b, alpha, violation });
    }
    Ok(value)
}

// ---------------------------------------------------------------------------
// traces

/// Sampled integral function s(t) and Cesàro means sigma(t) on a uniform
/// t-grid, with the cumulative trapezoid of s kept for window means.
#[derive(Debug, Clone)]
pub struct IntegralTrace {
    plan: SamplingPlan,
    f_name: String,
    grid: AlphaGrid,
    t: Vec<f64>,
    s: Vec<FuzzyNumber>,
    /// sigma[i] belongs to t[i + 1]; sigma at t = 0 is undefined.
    sigma: Vec<FuzzyNumber>,
    /// Trapezoid cumulative of s at each sample, flattened as
    /// `[sample * levels + level]`.
    cum_lower: Vec<f64>,
    cum_upper: Vec<f64>,
}

fn uniform_times(plan: &SamplingPlan) -> Vec<f64> {
    let n = plan.n_steps;
    (0..=n).map(|i| plan.t_max * (i as f64 / n as f64)).collect()
}

impl IntegralTrace {
    /// Builds the trace of `f`: s is accumulated panel by panel (interval
    /// additivity of the integral), sigma per endpoint from the cumulative
    /// trapezoid of the stored s samples with a two-point endpoint
    /// correction, divided by t.
    ///
    /// The endpoint correction subtracts the leading trapezoid error term
    /// h^2/12 * (s'(t) - s'(0)) = h^2/12 * (f(t) - f(0)), which plain
    /// trapezoid summation cannot keep below the accuracy the sigma samples
    /// are consumed at; window means deliberately stay on the uncorrected
    /// cumulative so that the deferred-mean identities are exact in exact
    /// arithmetic.
    pub fn build(f: &FuzzyFunction, plan: &SamplingPlan) -> Result<Self> {
        plan.validate()?;
        if f.domain_start() > 0.0 {
            return Err(Error::OutOfDomain { x: 0.0, domain_start: f.domain_start() });
        }
        let levels = f.grid().len();
        let t = uniform_times(plan);
        let n = plan.n_steps;
        let h = plan.step();
        let correction = h * h / 12.0;

        let mut s = Vec::with_capacity(n + 1);
        let mut sigma = Vec::with_capacity(n);
        let mut cum_lower = Vec::with_capacity((n + 1) * levels);
        let mut cum_upper = Vec::with_capacity((n + 1) * levels);

        let zero = FuzzyNumber::crisp(0.0, f.grid())?;
        s.push(zero);
        cum_lower.extend(std::iter::repeat_n(0.0, levels));
        cum_upper.extend(std::iter::repeat_n(0.0, levels));

        let f0 = f.eval_at(t[0])?;
        let mut f_prev = f0.clone();
        let mut run_lower = vec![0.0; levels];
        let mut run_upper = vec![0.0; levels];
        let mut trap_lower = vec![0.0; levels];
        let mut trap_upper = vec![0.0; levels];

        for i in 0..n {
            let (t0, t1) = (t[i], t[i + 1]);
            let f_next = f.eval_at(t1)?;
            let panel_tol = plan.quad_tol * ((t1 - t0) / plan.t_max);
            adaptive_simpson_into(
                f,
                t0,
                t1,
                panel_tol,
                f_prev,
                f_next.clone(),
                &mut run_lower,
                &mut run_upper,
            )?;
            let s_next =
                FuzzyNumber::from_endpoints(f.grid().clone(), run_lower.clone(), run_upper.clone())?;
            if let Err(violation) = s_next.validate() {
                let alpha = f.grid().levels()[violation.index()];
                return Err(Error::PointwiseInvariant { x: t1, alpha, violation });
            }

            // cumulative trapezoid of s, then the corrected Cesàro mean
            let s_prev = &s[i];
            let half = 0.5 * (t1 - t0);
            let mut sig_lower = Vec::with_capacity(levels);
            let mut sig_upper = Vec::with_capacity(levels);
            for l in 0..levels {
                trap_lower[l] += half * (s_prev.lower()[l] + s_next.lower()[l]);
                trap_upper[l] += half * (s_prev.upper()[l] + s_next.upper()[l]);
                sig_lower.push((trap_lower[l] - correction * (f_next.lower()[l] - f0.lower()[l])) / t1);
                sig_upper.push((trap_upper[l] - correction * (f_next.upper()[l] - f0.upper()[l])) / t1);
            }
            cum_lower.extend_from_slice(&trap_lower);
            cum_upper.extend_from_slice(&trap_upper);
            let sig = FuzzyNumber::from_endpoints(f.grid().clone(), sig_lower, sig_upper)?;
            if let Err(violation) = sig.validate() {
                let alpha = f.grid().levels()[violation.index()];
                return Err(Error::PointwiseInvariant { x: t1, alpha, violation });
            }
            s.push(s_next);
            sigma.push(sig);
            f_prev = f_next;
        }

        Ok(Self {
            plan: *plan,
            f_name: f.name().to_string(),
            grid: f.grid().clone(),
            t,
            s,
            sigma,
            cum_lower,
            cum_upper,
        })
    }

    /// Builds a trace directly from given s samples on the plan's uniform
    /// grid (one fuzzy number per sample, first sample at t = 0). Sigma is
    /// the plain cumulative trapezoid divided by t; no endpoint correction is
    /// possible because the integrand is unknown here.
    pub fn from_parts(plan: &SamplingPlan, f_name: impl Into<String>, s: Vec<FuzzyNumber>) -> Result<Self> {
        plan.validate()?;
        if s.len() != plan.n_steps + 1 {
            return Err(Error::InvalidPlan(format!(
                "need {} s samples for n_steps = {}, got {}",
                plan.n_steps + 1,
                plan.n_steps,
                s.len()
            )));
        }
        let grid = s[0].grid().clone();
        let levels = grid.len();
        let t = uniform_times(plan);
        let mut cum_lower = vec![0.0; levels];
        let mut cum_upper = vec![0.0; levels];
        let mut all_cum_lower = Vec::with_capacity(s.len() * levels);
        let mut all_cum_upper = Vec::with_capacity(s.len() * levels);
        all_cum_lower.extend_from_slice(&cum_lower);
        all_cum_upper.extend_from_slice(&cum_upper);
        let mut sigma = Vec::with_capacity(plan.n_steps);

        for i in 0..plan.n_steps {
            let (a, b) = (&s[i], &s[i + 1]);
            if !a.grid().same_as(&grid) || !b.grid().same_as(&grid) {
                return Err(Error::GridMismatch);
            }
            if let Err(violation) = b.validate() {
                let alpha = grid.levels()[violation.index()];
                return Err(Error::PointwiseInvariant { x: t[i + 1], alpha, violation });
            }
            let half = 0.5 * (t[i + 1] - t[i]);
            let mut sig_lower = Vec::with_capacity(levels);
            let mut sig_upper = Vec::with_capacity(levels);
            for l in 0..levels {
                cum_lower[l] += half * (a.lower()[l] + b.lower()[l]);
                cum_upper[l] += half * (a.upper()[l] + b.upper()[l]);
                sig_lower.push(cum_lower[l] / t[i + 1]);
                sig_upper.push(cum_upper[l] / t[i + 1]);
            }
            all_cum_lower.extend_from_slice(&cum_lower);
            all_cum_upper.extend_from_slice(&cum_upper);
            sigma.push(FuzzyNumber::from_endpoints(grid.clone(), sig_lower, sig_upper)?);
        }
        if let Err(violation) = s[0].validate() {
            let alpha = grid.levels()[violation.index()];
            return Err(Error::PointwiseInvariant { x: 0.0, alpha, violation });
        }

        Ok(Self {
            plan: *plan,
            f_name: f_name.into(),
            grid,
            t,
            s,
            sigma,
            cum_lower: all_cum_lower,
            cum_upper: all_cum_upper,
        })
    }

    /// Trace whose "s" samples are the function values themselves. Running
    /// the window means and condition checkers on such a trace applies them
    /// to f in place of s, which is the function-summability reading.
    pub fn from_function_samples(f: &FuzzyFunction, plan: &SamplingPlan) -> Result<Self> {
        plan.validate()?;
        let t = uniform_times(plan);
        let mut samples = Vec::with_capacity(t.len());
        for &ti in &t {
            samples.push(f.eval_at(ti)?);
        }
        Self::from_parts(plan, format!("{}[as-values]", f.name()), samples)
    }

    pub fn plan(&self) -> &SamplingPlan {
        &self.plan
    }

    pub fn f_name(&self) -> &str {
        &self.f_name
    }

    pub fn grid(&self) -> &AlphaGrid {
        &self.grid
    }

    pub fn times(&self) -> &[f64] {
        &self.t
    }

    pub fn s_samples(&self) -> &[FuzzyNumber] {
        &self.s
    }

    /// Sigma samples; entry `i` belongs to `times()[i + 1]`.
    pub fn sigma_samples(&self) -> &[FuzzyNumber] {
        &self.sigma
    }

    /// The (t, s(t)) series including t = 0.
    pub fn s_series(&self) -> Vec<(f64, FuzzyNumber)> {
        self.t.iter().copied().zip(self.s.iter().cloned()).collect()
    }

    /// The (t, sigma(t)) series, starting at the first positive sample.
    pub fn sigma_series(&self) -> Vec<(f64, FuzzyNumber)> {
        self.t[1..].iter().copied().zip(self.sigma.iter().cloned()).collect()
    }

    fn t_max_slack(&self) -> f64 {
        self.plan.t_max * (1.0 + 1e-9)
    }

    /// Sample index nearest to `t`.
    fn nearest_index(&self, t: f64) -> usize {
        let h = self.plan.step();
        ((t / h).round() as usize).min(self.plan.n_steps)
    }

    /// Cesàro mean at `t`, read from the stored samples (nearest sample for
    /// off-grid `t`; `t` in the first half-step resolves to the first
    /// positive sample).
    pub fn cesaro_mean_at(&self, t: f64) -> Result<FuzzyNumber> {
        if !(t > 0.0) || t > self.t_max_slack() {
            return Err(Error::OutOfRange { t, t_max: self.plan.t_max });
        }
        let idx = self.nearest_index(t).max(1);
        Ok(self.sigma[idx - 1].clone())
    }

    /// Cumulative integral of s from 0 to `t` per endpoint, treating s as
    /// piecewise linear between samples (exact for the stored model, so the
    /// deferred-mean identities hold up to rounding).
    fn cumulative_at(&self, t: f64) -> (Vec<f64>, Vec<f64>) {
        let levels = self.grid.len();
        let n = self.plan.n_steps;
        let h = self.plan.step();
        let t = t.clamp(0.0, *self.t.last().unwrap());
        let k = ((t / h).floor() as usize).min(n - 1);
        let tk = self.t[k];
        let dt = (t - tk).max(0.0);
        let w = self.t[k + 1] - tk;
        let theta = (dt / w).clamp(0.0, 1.0);
        let (sk, sk1) = (&self.s[k], &self.s[k + 1]);
        let mut lower = Vec::with_capacity(levels);
        let mut upper = Vec::with_capacity(levels);
        for l in 0..levels {
            let sl = sk.lower()[l];
            let su = sk.upper()[l];
            let interp_l = sl + theta * (sk1.lower()[l] - sl);
            let interp_u = su + theta * (sk1.upper()[l] - su);
            lower.push(self.cum_lower[k * levels + l] + dt * 0.5 * (sl + interp_l));
            upper.push(self.cum_upper[k * levels + l] + dt * 0.5 * (su + interp_u));
        }
        (lower, upper)
    }

    fn window_mean(&self, lo: f64, hi: f64) -> Result<FuzzyNumber> {
        let (lo_l, lo_u) = self.cumulative_at(lo);
        let (hi_l, hi_u) = self.cumulative_at(hi);
        let w = hi - lo;
        let lower = hi_l.iter().zip(&lo_l).map(|(b, a)| (b - a) / w).collect();
        let upper = hi_u.iter().zip(&lo_u).map(|(b, a)| (b - a) / w).collect();
        FuzzyNumber::from_endpoints(self.grid.clone(), lower, upper)
    }

    /// Forward deferred mean: the average of s over `[t, lambda t]`.
    pub fn deferred_mean_forward(&self, t: f64, lambda: f64) -> Result<FuzzyNumber> {
        if !(lambda > 1.0) || !lambda.is_finite() {
            return Err(Error::InvalidWindow(format!("lambda must be > 1, got {lambda}")));
        }
        let hi = lambda * t;
        if !(t > 0.0) || hi > self.t_max_slack() {
            return Err(Error::OutOfRange { t, t_max: self.plan.t_max });
        }
        self.window_mean(t, hi)
    }

    /// Backward deferred mean: the average of s over `[ell t, t]`.
    pub fn deferred_mean_backward(&self, t: f64, ell: f64) -> Result<FuzzyNumber> {
        if !(ell > 0.0 && ell < 1.0) {
            return Err(Error::InvalidWindow(format!("ell must be in (0, 1), got {ell}")));
        }
        if !(t > 0.0) || t > self.t_max_slack() {
            return Err(Error::OutOfRange { t, t_max: self.plan.t_max });
        }
        self.window_mean(ell * t, t)
    }

    /// Cesàro mean evaluated through the same piecewise-linear cumulative the
    /// window means use. The stored sigma samples carry an endpoint
    /// correction; the identity checks need this uncorrected reading.
    fn cesaro_from_cumulative(&self, t: f64) -> Result<FuzzyNumber> {
        let (lower, upper) = self.cumulative_at(t);
        FuzzyNumber::from_endpoints(
            self.grid.clone(),
            lower.into_iter().map(|v| v / t).collect(),
            upper.into_iter().map(|v| v / t).collect(),
        )
    }

    /// Checks the two window-mean identities relating deferred means and
    /// Cesàro means, reporting the metric residual of each at `tol`.
    ///
    /// Both sides are evaluated through one discrete cumulative functional,
    /// so the residuals measure floating-point error only.
    pub fn verify_lemma_identities(&self, t: f64, lambda: f64, ell: f64, tol: f64) -> Result<LemmaIdentityReport> {
        let forward = self.deferred_mean_forward(t, lambda)?;
        let backward = self.deferred_mean_backward(t, ell)?;
        let c = 1.0 / (lambda - 1.0);
        let sigma_t = self.cesaro_from_cumulative(t)?;
        let sigma_lt = self.cesaro_from_cumulative(lambda * t)?;
        let es1_lhs = forward.add(&sigma_t.scale(c)?)?;
        let es1_rhs = sigma_lt.add(&sigma_lt.scale(c)?)?;
        let es1_residual = es1_lhs.distance(&es1_rhs)?;

        let d = ell / (1.0 - ell);
        let sigma_et = self.cesaro_from_cumulative(ell * t)?;
        let es2_lhs = backward.add(&sigma_et.scale(d)?)?;
        let es2_rhs = sigma_t.add(&sigma_t.scale(d)?)?;
        let es2_residual = es2_lhs.distance(&es2_rhs)?;

        Ok(LemmaIdentityReport {
            t,
            lambda,
            ell,
            tol,
            es1_residual,
            es2_residual,
            es1_pass: es1_residual <= tol,
            es2_pass: es2_residual <= tol,
        })
    }

    /// CSV with one row per (t, alpha) pair. Sigma cells are empty at t = 0,
    /// where the mean is undefined.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("t,alpha,s_lower,s_upper,sigma_lower,sigma_upper\n");
        for (i, &ti) in self.t.iter().enumerate() {
            for (l, &alpha) in self.grid.levels().iter().enumerate() {
                let s = &self.s[i];
                if i == 0 {
                    out.push_str(&format!("{},{},{},{},,\n", ti, alpha, s.lower()[l], s.upper()[l]));
                } else {
                    let sig = &self.sigma[i - 1];
                    out.push_str(&format!(
                        "{},{},{},{},{},{}\n",
                        ti,
                        alpha,
                        s.lower()[l],
                        s.upper()[l],
                        sig.lower()[l],
                        sig.upper()[l]
                    ));
                }
            }
        }
        out
    }
}

/// Residuals of the two window-mean identities at one (t, lambda, ell).
#[derive(Debug, Clone, Serialize)]
pub struct LemmaIdentityReport {
    pub t: f64,
    pub lambda: f64,
    pub ell: f64,
    pub tol: f64,
    pub es1_residual: f64,
    pub es2_residual: f64,
    pub es1_pass: bool,
    pub es2_pass: bool,
}

// JSON mirror of the trace: alpha grid hoisted once, per-sample endpoint
// arrays, sigma null at t = 0.
impl Serialize for IntegralTrace {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        struct Endpoints<'a>(&'a FuzzyNumber);
        impl Serialize for Endpoints<'_> {
            fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                let mut st = s.serialize_struct("Endpoints", 2)?;
                st.serialize_field("lower", self.0.lower())?;
                st.serialize_field("upper", self.0.upper())?;
                st.end()
            }
        }
        struct Samples<'a>(&'a IntegralTrace);
        impl Serialize for Samples<'_> {
            fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                let tr = self.0;
                let mut seq = s.serialize_seq(Some(tr.t.len()))?;
                for (i, &ti) in tr.t.iter().enumerate() {
                    #[derive(Serialize)]
                    struct Row<'a> {
                        t: f64,
                        s: Endpoints<'a>,
                        sigma: Option<Endpoints<'a>>,
                    }
                    seq.serialize_element(&Row {
                        t: ti,
                        s: Endpoints(&tr.s[i]),
                        sigma: if i == 0 { None } else { Some(Endpoints(&tr.sigma[i - 1])) },
                    })?;
                }
                seq.end()
            }
        }
        let mut st = serializer.serialize_struct("IntegralTrace", 4)?;
        st.serialize_field("function", &self.f_name)?;
        st.serialize_field("plan", &self.plan)?;
        st.serialize_field("alpha", self.grid.levels())?;
        st.serialize_field("samples", &Samples(self))?;
        st.end()
    }
}
