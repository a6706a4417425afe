//! Fuzzy-number-valued functions on `[domain_start, inf)` as paired endpoint
//! evaluators over an [`AlphaGrid`], plus the built-in catalog.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::expr::{self, Expr};
use crate::grid::AlphaGrid;
use crate::number::FuzzyNumber;

/// One endpoint evaluator: `(x, alpha) -> value`.
pub type EndpointFn = Arc<dyn Fn(f64, f64) -> Result<f64> + Send + Sync>;

/// A fuzzy-number-valued function in parametric form: lower and upper
/// endpoint evaluators. Evaluators must be pure; evaluation at distinct `x`
/// may run in parallel.
#[derive(Clone)]
pub struct FuzzyFunction {
    name: String,
    grid: AlphaGrid,
    domain_start: f64,
    lower: EndpointFn,
    upper: EndpointFn,
}

impl std::fmt::Debug for FuzzyFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FuzzyFunction")
            .field("name", &self.name)
            .field("grid_levels", &self.grid.len())
            .field("domain_start", &self.domain_start)
            .finish()
    }
}

impl FuzzyFunction {
    pub fn from_closures(
        name: impl Into<String>,
        grid: &AlphaGrid,
        lower: EndpointFn,
        upper: EndpointFn,
    ) -> Self {
        Self {
            name: name.into(),
            grid: grid.clone(),
            domain_start: 0.0,
            lower,
            upper,
        }
    }

    /// Builds the function from two parsed endpoint expressions; evaluation
    /// errors from the expressions propagate, and the pointwise fuzzy-number
    /// property is checked wherever the function is sampled.
    pub fn from_exprs(lower_expr: Expr, upper_expr: Expr, grid: &AlphaGrid) -> Self {
        let name = format!("expr[{lower_expr}; {upper_expr}]");
        let le = Arc::new(lower_expr);
        let ue = Arc::new(upper_expr);
        Self {
            name,
            grid: grid.clone(),
            domain_start: 0.0,
            lower: Arc::new(move |x, a| expr::eval(&le, x, a).map_err(Error::from)),
            upper: Arc::new(move |x, a| expr::eval(&ue, x, a).map_err(Error::from)),
        }
    }

    /// The crisp constant function `x -> c` (as a fuzzy number).
    pub fn crisp_constant(c: f64, grid: &AlphaGrid) -> Result<Self> {
        if !c.is_finite() {
            return Err(Error::NonFinite { what: "constant", value: c });
        }
        Ok(Self {
            name: format!("crisp-constant({c})"),
            grid: grid.clone(),
            domain_start: 0.0,
            lower: Arc::new(move |_, _| Ok(c)),
            upper: Arc::new(move |_, _| Ok(c)),
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn grid(&self) -> &AlphaGrid {
        &self.grid
    }

    pub fn domain_start(&self) -> f64 {
        self.domain_start
    }

    /// Samples the function at `x`, producing a validated fuzzy number.
    pub fn eval_at(&self, x: f64) -> Result<FuzzyNumber> {
        if !(x >= self.domain_start) {
            return Err(Error::OutOfDomain { x, domain_start: self.domain_start });
        }
        let n = self.grid.len();
        let mut lower = Vec::with_capacity(n);
        let mut upper = Vec::with_capacity(n);
        for &alpha in self.grid.levels() {
            lower.push((self.lower)(x, alpha)?);
            upper.push((self.upper)(x, alpha)?);
        }
        let value = FuzzyNumber::from_endpoints(self.grid.clone(), lower, upper)?;
        if let Err(violation) = value.validate() {
            let alpha = self.grid.levels()[violation.index()];
            return Err(Error::PointwiseInvariant { x, alpha, violation });
        }
        Ok(value)
    }
}

// ---------------------------------------------------------------------------
// catalog

/// Manifest record for one built-in function.
#[derive(Debug, Clone, Serialize)]
pub struct CatalogEntry {
    pub name: String,
    pub lower_expr: String,
    pub upper_expr: String,
    pub notes: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub closed_form_s: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub closed_form_sigma: Option<String>,
}

/// Metadata for the built-in functions, in catalog order.
pub fn manifest() -> Vec<CatalogEntry> {
    vec![
        CatalogEntry {
            name: "paper-example-1".into(),
            lower_expr: "cos(x) + alpha/(x+1)^2".into(),
            upper_expr: "cos(x) + (2-alpha)/(x+1)^2".into(),
            notes: "Oscillating integrand; the integral diverges but is Cesàro summable to \
                    levels [alpha, 2-alpha]."
                .into(),
            closed_form_s: Some(
                "lower: sin(t) + alpha*(1 - 1/(t+1)); upper: sin(t) + (2-alpha)*(1 - 1/(t+1))".into(),
            ),
            closed_form_sigma: Some(
                "lower: -cos(t)/t + 1/t + alpha*(1 - ln(t+1)/t); upper: -cos(t)/t + 1/t + \
                 (2-alpha)*(1 - ln(t+1)/t)"
                    .into(),
            ),
        },
        CatalogEntry {
            name: "paper-example-2".into(),
            lower_expr: "(2 - sin(x))*alpha".into(),
            upper_expr: "(2 - sin(x))*(2-alpha)".into(),
            notes: "Nonnegative integrand with linearly growing integral; slowly decreasing, \
                    neither convergent nor Cesàro summable."
                .into(),
            closed_form_s: Some(
                "lower: alpha*(2t + cos(t) - 1); upper: (2-alpha)*(2t + cos(t) - 1)".into(),
            ),
            closed_form_sigma: Some(
                "lower: alpha*(t - 1 + sin(t)/t); upper: (2-alpha)*(t - 1 + sin(t)/t)".into(),
            ),
        },
        CatalogEntry {
            name: "convergent-1".into(),
            lower_expr: "alpha/(1+x)^2".into(),
            upper_expr: "(2-alpha)/(1+x)^2".into(),
            notes: "Convergent integral with limit levels [alpha, 2-alpha]; the Cesàro means \
                    converge to the same value."
                .into(),
            closed_form_s: Some(
                "lower: alpha*(1 - 1/(1+t)); upper: (2-alpha)*(1 - 1/(1+t))".into(),
            ),
            closed_form_sigma: Some(
                "lower: alpha*(1 - ln(1+t)/t); upper: (2-alpha)*(1 - ln(1+t)/t)".into(),
            ),
        },
        crisp_entry(0.0),
        crisp_entry(1.0),
    ]
}

fn crisp_entry(c: f64) -> CatalogEntry {
    CatalogEntry {
        name: format!("crisp-constant({c})"),
        lower_expr: format!("{c}"),
        upper_expr: format!("{c}"),
        notes: "Crisp constant integrand; s(t) = c*t, sigma(t) = c*t/2. Any constant works: \
                crisp-constant(<value>)."
            .into(),
        closed_form_s: Some(format!("{c}*t (both endpoints)")),
        closed_form_sigma: Some(format!("{c}*t/2 (both endpoints)")),
    }
}

/// The built-in functions instantiated on `grid`, in manifest order.
pub fn catalog(grid: &AlphaGrid) -> Vec<FuzzyFunction> {
    vec![
        paper_example_1(grid),
        paper_example_2(grid),
        convergent_1(grid),
        FuzzyFunction::crisp_constant(0.0, grid).unwrap(),
        FuzzyFunction::crisp_constant(1.0, grid).unwrap(),
    ]
}

/// Looks up a catalog function by name. `crisp-constant(<value>)` accepts any
/// finite constant, not just the two listed entries.
pub fn find(name: &str, grid: &AlphaGrid) -> Result<FuzzyFunction> {
    match name {
        "paper-example-1" => return Ok(paper_example_1(grid)),
        "paper-example-2" => return Ok(paper_example_2(grid)),
        "convergent-1" => return Ok(convergent_1(grid)),
        _ => {}
    }
    if let Some(rest) = name.strip_prefix("crisp-constant(") {
        if let Some(num) = rest.strip_suffix(')') {
            if let Ok(c) = num.trim().parse::<f64>() {
                return FuzzyFunction::crisp_constant(c, grid);
            }
        }
    }
    Err(Error::UnknownFunction(name.to_string()))
}

fn paper_example_1(grid: &AlphaGrid) -> FuzzyFunction {
    FuzzyFunction::from_closures(
        "paper-example-1",
        grid,
        Arc::new(|x, a| Ok(x.cos() + a / ((x + 1.0) * (x + 1.0)))),
        Arc::new(|x, a| Ok(x.cos() + (2.0 - a) / ((x + 1.0) * (x + 1.0)))),
    )
}

fn paper_example_2(grid: &AlphaGrid) -> FuzzyFunction {
    FuzzyFunction::from_closures(
        "paper-example-2",
        grid,
        Arc::new(|x, a| Ok((2.0 - x.sin()) * a)),
        Arc::new(|x, a| Ok((2.0 - x.sin()) * (2.0 - a))),
    )
}

fn convergent_1(grid: &AlphaGrid) -> FuzzyFunction {
    FuzzyFunction::from_closures(
        "convergent-1",
        grid,
        Arc::new(|x, a| Ok(a / ((1.0 + x) * (1.0 + x)))),
        Arc::new(|x, a| Ok((2.0 - a) / ((1.0 + x) * (1.0 + x)))),
    )
}
