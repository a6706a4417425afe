//! Command-line front end: analyze catalog or expression-defined functions,
//! run the summability condition checkers, and export traces.
//!
//! Machine output (JSON, or CSV for traces) goes to stdout or --out; the
//! human summary goes to stderr. Exit codes: 0 completed, 2 configuration or
//! validation error, 3 numeric failure, 4 I/O error.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use fuzzy_cesaro::{
    catalog, check_backward_slow_decrease, check_condition_doublestar, check_condition_star,
    check_landau, check_slow_decrease, classify_trace, find, manifest, AlphaGrid, AnalysisReport,
    CheckerOutcome, Error as CoreError, FuzzyFunction, FuzzyNumber, IntegralTrace, SamplingPlan,
    DEFAULT_ANALYSIS_TOL, DEFAULT_STRIDE,
};

#[derive(Parser)]
#[command(
    name = "fuzzy-cesaro",
    version,
    about = "Cesàro summability analysis for improper integrals of fuzzy-number-valued functions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a function: does the integral converge, is it Cesàro summable?
    Analyze(AnalyzeArgs),
    /// Run summability condition checkers over a freshly built trace
    Check(CheckArgs),
    /// Export the sampled trace (t, s, sigma) as CSV and/or JSON
    Export(ExportArgs),
    /// List the built-in functions
    Catalog(CatalogArgs),
}

#[derive(Args)]
#[command(group(ArgGroup::new("selector").required(true).args(["catalog", "lower"])))]
struct FunctionArgs {
    /// Built-in function name (see `catalog`); crisp-constant(<value>) takes any constant
    #[arg(long, value_name = "NAME")]
    catalog: Option<String>,
    /// Lower endpoint expression in x and alpha
    #[arg(long, value_name = "EXPR", requires = "upper")]
    lower: Option<String>,
    /// Upper endpoint expression in x and alpha
    #[arg(long, value_name = "EXPR", requires = "lower", conflicts_with = "catalog")]
    upper: Option<String>,
}

#[derive(Args)]
struct PlanArgs {
    /// Number of alpha levels in [0, 1]
    #[arg(long, default_value_t = 33, value_name = "N")]
    grid: usize,
    /// Upper end of the sampled t range
    #[arg(long, default_value_t = 1000.0)]
    t_max: f64,
    /// Number of uniform t steps
    #[arg(long, default_value_t = 20_000)]
    n_steps: usize,
    /// Absolute quadrature tolerance per endpoint
    #[arg(long, default_value_t = 1e-9)]
    quad_tol: f64,
}

impl PlanArgs {
    fn plan(&self) -> SamplingPlan {
        SamplingPlan { t_max: self.t_max, n_steps: self.n_steps, quad_tol: self.quad_tol }
    }
}

#[derive(Args)]
struct AnalyzeArgs {
    #[command(flatten)]
    function: FunctionArgs,
    #[command(flatten)]
    plan: PlanArgs,
    /// Convergence tolerance for the limit estimator
    #[arg(long, default_value_t = DEFAULT_ANALYSIS_TOL)]
    tol: f64,
    /// Write the JSON report here instead of stdout
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CheckArgs {
    #[command(flatten)]
    function: FunctionArgs,
    #[command(flatten)]
    plan: PlanArgs,
    /// Check slow decrease of s over (t, lambda t]
    #[arg(long)]
    slow_decrease: bool,
    /// Check backward slow decrease of s over (ell t, t]
    #[arg(long)]
    backward_slow_decrease: bool,
    /// Check the averaged forward condition (deferred mean vs s(t) - eps)
    #[arg(long)]
    condition_star: bool,
    /// Check the averaged backward condition (deferred mean vs s(t) + eps)
    #[arg(long)]
    condition_doublestar: bool,
    /// Check the one-sided bound x f(x) >= u0 against a crisp constant u0
    #[arg(long)]
    landau: bool,
    #[arg(long, default_value_t = 0.5)]
    eps: f64,
    /// Window factor for slow-decrease / condition-star (> 1)
    #[arg(long, default_value_t = 1.5)]
    lambda: f64,
    /// Window factor for backward checks (in (0, 1))
    #[arg(long, default_value_t = 0.5)]
    ell: f64,
    /// Scan window starts only above this t
    #[arg(long, default_value_t = 1.0)]
    t0: f64,
    /// Crisp Landau bound (must be <= 0)
    #[arg(long, default_value_t = 0.0)]
    u0: f64,
    /// Scan x above this point in the Landau check
    #[arg(long, default_value_t = 0.0)]
    x0: f64,
    /// Decimation of window starts in the pair scans
    #[arg(long, default_value_t = DEFAULT_STRIDE)]
    stride: usize,
    /// Write the JSON outcome list here instead of stdout
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
    Both,
}

#[derive(Args)]
struct ExportArgs {
    #[command(flatten)]
    function: FunctionArgs,
    #[command(flatten)]
    plan: PlanArgs,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Output path; `both` appends .csv and .json to it
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CatalogArgs {
    /// Emit the catalog manifest as JSON
    #[arg(long)]
    json: bool,
}

// ---------------------------------------------------------------------------

enum CliError {
    Core(CoreError),
    Io(std::io::Error),
    Usage(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Core(e) => match e {
                CoreError::QuadratureBudget { .. } => 3,
                _ => 2,
            },
            CliError::Io(_) => 4,
            CliError::Usage(_) => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "{e}"),
            CliError::Usage(m) => write!(f, "{m}"),
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        CliError::Core(e)
    }
}

impl From<fuzzy_cesaro::expr::ParseError> for CliError {
    fn from(e: fuzzy_cesaro::expr::ParseError) -> Self {
        CliError::Core(e.into())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Analyze(args) => run_analyze(args),
        Command::Check(args) => run_check(args),
        Command::Export(args) => run_export(args),
        Command::Catalog(args) => run_catalog(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}

fn build_function(args: &FunctionArgs, grid: &AlphaGrid) -> Result<FuzzyFunction, CliError> {
    if let Some(name) = &args.catalog {
        return Ok(find(name, grid)?);
    }
    let lower = fuzzy_cesaro::parse(args.lower.as_deref().unwrap())?;
    let upper = fuzzy_cesaro::parse(args.upper.as_deref().unwrap())?;
    Ok(FuzzyFunction::from_exprs(lower, upper, grid))
}

/// Writes to stdout, treating a closed pipe downstream as a normal exit.
fn write_stdout(s: &str) -> Result<(), CliError> {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    match out.write_all(s.as_bytes()).and_then(|_| out.flush()) {
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => std::process::exit(0),
        other => Ok(other?),
    }
}

fn emit(json: String, out: Option<&Path>) -> Result<(), CliError> {
    match out {
        Some(path) => Ok(fs::write(path, json + "\n")?),
        None => write_stdout(&(json + "\n")),
    }
}

fn endpoint_preview(v: &FuzzyNumber) -> String {
    let n = v.lower().len();
    format!(
        "alpha = 0: [{:.6}, {:.6}], alpha = 1: [{:.6}, {:.6}]",
        v.lower()[0],
        v.upper()[0],
        v.lower()[n - 1],
        v.upper()[n - 1]
    )
}

fn summarize_report(report: &AnalysisReport) {
    eprintln!("function: {}", report.function);
    eprintln!(
        "plan: t_max = {}, n_steps = {}, quad_tol = {:e}, grid = {} levels, tol = {}",
        report.plan.t_max, report.plan.n_steps, report.plan.quad_tol, report.plan.grid_levels, report.plan.tol
    );
    for (label, est) in [("integral limit", &report.integral_limit), ("cesaro limit", &report.cesaro_limit)] {
        eprintln!(
            "{label}: {:?} (residual {:.3e} at scale {})",
            est.status, est.residual, est.scale
        );
        if let Some(v) = &est.value {
            eprintln!("  value: {}", endpoint_preview(v));
        }
    }
    for c in &report.checkers {
        eprintln!("check {}: {:?} ({})", c.name, c.outcome, c.notes);
    }
}

fn summarize_outcomes(outcomes: &[CheckerOutcome]) {
    for o in outcomes {
        match &o.witness {
            Some(w) => eprintln!(
                "{}: {:?} at t = {:.4}{}, alpha = {:.4}, margin = {:.3e}",
                o.name,
                o.outcome,
                w.t,
                w.x.map(|x| format!(", x = {x:.4}")).unwrap_or_default(),
                w.alpha,
                w.margin
            ),
            None => eprintln!(
                "{}: {:?} (range {:.4}..{:.4}, stride {})",
                o.name, o.outcome, o.params.range.0, o.params.range.1, o.params.stride
            ),
        }
    }
}

fn run_analyze(args: AnalyzeArgs) -> Result<(), CliError> {
    let grid = AlphaGrid::uniform(args.plan.grid)?;
    let plan = args.plan.plan();
    let f = build_function(&args.function, &grid)?;
    let trace = IntegralTrace::build(&f, &plan)?;
    let report = classify_trace(f.name(), &trace, args.tol)?;
    summarize_report(&report);
    let json = serde_json::to_string_pretty(&report).expect("report serialization");
    emit(json, args.out.as_deref())
}

fn run_check(args: CheckArgs) -> Result<(), CliError> {
    let grid = AlphaGrid::uniform(args.plan.grid)?;
    let plan = args.plan.plan();
    let f = build_function(&args.function, &grid)?;

    let wants_trace = args.slow_decrease
        || args.backward_slow_decrease
        || args.condition_star
        || args.condition_doublestar;
    if !wants_trace && !args.landau {
        return Err(CliError::Usage(
            "select at least one checker: --slow-decrease, --backward-slow-decrease, \
             --condition-star, --condition-doublestar, --landau"
                .into(),
        ));
    }

    let mut outcomes = Vec::new();
    if wants_trace {
        let trace = IntegralTrace::build(&f, &plan)?;
        if args.slow_decrease {
            outcomes.push(check_slow_decrease(&trace, args.eps, args.lambda, args.t0, args.stride)?);
        }
        if args.backward_slow_decrease {
            outcomes.push(check_backward_slow_decrease(&trace, args.eps, args.ell, args.t0, args.stride)?);
        }
        if args.condition_star {
            outcomes.push(check_condition_star(&trace, args.eps, args.lambda, args.t0)?);
        }
        if args.condition_doublestar {
            outcomes.push(check_condition_doublestar(&trace, args.eps, args.ell, args.t0)?);
        }
    }
    if args.landau {
        let u = FuzzyNumber::crisp(args.u0, &grid)?;
        outcomes.push(check_landau(&f, &u, args.x0, &plan)?);
    }

    summarize_outcomes(&outcomes);
    let json = serde_json::to_string_pretty(&outcomes).expect("outcome serialization");
    emit(json, args.out.as_deref())
}

fn run_export(args: ExportArgs) -> Result<(), CliError> {
    let grid = AlphaGrid::uniform(args.plan.grid)?;
    let plan = args.plan.plan();
    let f = build_function(&args.function, &grid)?;
    let trace = IntegralTrace::build(&f, &plan)?;

    match args.format {
        Format::Csv => {
            let csv = trace.to_csv();
            match args.out.as_deref() {
                Some(path) => fs::write(path, csv)?,
                None => write_stdout(&csv)?,
            }
        }
        Format::Json => {
            let json = serde_json::to_string_pretty(&trace).expect("trace serialization");
            emit(json, args.out.as_deref())?;
        }
        Format::Both => {
            let base = args.out.as_deref().ok_or_else(|| {
                CliError::Usage("--format both needs --out PATH (writes PATH.csv and PATH.json)".into())
            })?;
            let mut csv_path = base.as_os_str().to_owned();
            csv_path.push(".csv");
            let mut json_path = base.as_os_str().to_owned();
            json_path.push(".json");
            fs::write(PathBuf::from(csv_path), trace.to_csv())?;
            let json = serde_json::to_string_pretty(&trace).expect("trace serialization");
            fs::write(PathBuf::from(json_path), json + "\n")?;
        }
    }
    eprintln!(
        "exported {} samples x {} levels for {}",
        trace.times().len(),
        trace.grid().len(),
        trace.f_name()
    );
    Ok(())
}

fn run_catalog(args: CatalogArgs) -> Result<(), CliError> {
    if args.json {
        let json = serde_json::to_string_pretty(&manifest()).expect("manifest serialization");
        return write_stdout(&(json + "\n"));
    }
    let grid = AlphaGrid::uniform(3)?;
    let mut text = String::new();
    for (entry, f) in manifest().iter().zip(catalog(&grid)) {
        debug_assert_eq!(entry.name, f.name());
        text.push_str(&format!("{}\n", entry.name));
        text.push_str(&format!("  lower: {}\n", entry.lower_expr));
        text.push_str(&format!("  upper: {}\n", entry.upper_expr));
        text.push_str(&format!("  notes: {}\n", entry.notes));
        if let Some(s) = &entry.closed_form_s {
            text.push_str(&format!("  s(t):  {s}\n"));
        }
        if let Some(sigma) = &entry.closed_form_sigma {
            text.push_str(&format!("  sigma: {sigma}\n"));
        }
    }
    write_stdout(&text)
}
