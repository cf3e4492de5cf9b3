//! `eikit` — evaluation, constants, tabulation, and cross-check
//! verification for the exponential integral and its relatives.
//!
//! Exit status: 0 success, 1 verification failure, 2 usage or domain error,
//! 3 non-convergence.

mod output;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use eikit_core::{
    ei_one, ei_quadrature, ei_series, gamma_integral, gamma_reference, goodwin_staton_lhs,
    goodwin_staton_rhs, lemma1_series, li, li_quadrature, puiseux_tail, run_crosschecks_with,
    soldner_constant, CheckRecord, EvalError, EvalResult, QuadConfig, SeriesPolicy,
};
use output::{csv, fmt17, to_json};

#[derive(Parser)]
#[command(
    name = "eikit",
    version,
    about = "Exponential integral toolkit: Ei, li, Goodwin-Staton, and their cross-checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a function at a point
    Eval {
        /// Function to evaluate
        #[arg(value_enum)]
        function: FunctionArg,
        /// Evaluation point
        #[arg(long, allow_hyphen_values = true)]
        x: f64,
        /// Evaluation route
        #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
        method: MethodArg,
        /// Absolute tolerance for both series and quadrature
        #[arg(long)]
        tol: Option<f64>,
        /// Output format
        #[arg(long, value_enum, default_value_t = FormatArg::Text)]
        format: FormatArg,
    },
    /// Print gamma (three routes), Ei(1) (two routes), and the Soldner constant
    Constants {
        /// Output format
        #[arg(long, value_enum, default_value_t = FormatArg::Text)]
        format: FormatArg,
    },
    /// Tabulate a function on a uniform grid
    Table {
        /// Function to tabulate
        #[arg(value_enum)]
        function: FunctionArg,
        /// Left end of the grid
        #[arg(long, allow_hyphen_values = true)]
        x_min: f64,
        /// Right end of the grid
        #[arg(long, allow_hyphen_values = true)]
        x_max: f64,
        /// Number of grid points (>= 2)
        #[arg(long)]
        points: usize,
        /// Output format
        #[arg(long, value_enum, default_value_t = FormatArg::Text)]
        format: FormatArg,
        /// Drop grid points outside the function's domain instead of failing
        #[arg(long)]
        skip_singular: bool,
    },
    /// Run the cross-check suite and report every identity check
    Verify {
        /// Scale factor applied to every check tolerance
        #[arg(long, default_value_t = 1.0)]
        tol_scale: f64,
        /// Output format
        #[arg(long, value_enum, default_value_t = FormatArg::Text)]
        format: FormatArg,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FunctionArg {
    Ei,
    Li,
    #[value(name = "goodwin_staton", alias = "goodwin-staton")]
    GoodwinStaton,
}

impl FunctionArg {
    fn name(self) -> &'static str {
        match self {
            FunctionArg::Ei => "ei",
            FunctionArg::Li => "li",
            FunctionArg::GoodwinStaton => "goodwin_staton",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Series,
    Quadrature,
    Lemma1,
    Auto,
}

impl MethodArg {
    fn name(self) -> &'static str {
        match self {
            MethodArg::Series => "series",
            MethodArg::Quadrature => "quadrature",
            MethodArg::Lemma1 => "lemma1",
            MethodArg::Auto => "auto",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Text,
    Json,
    Csv,
}

/// Failures mapped onto the exit-status contract.
enum Failure {
    /// exit 2: bad usage or a domain violation
    Usage(String),
    /// exit 3: an evaluation route failed to converge
    NonConvergence(String),
}

impl From<EvalError> for Failure {
    fn from(err: EvalError) -> Self {
        match err {
            EvalError::Domain(_) | EvalError::InconsistentPoleLimit { .. } => {
                Failure::Usage(err.to_string())
            }
            EvalError::NonConvergence { .. } => Failure::NonConvergence(err.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1), // verification failure
        Err(Failure::Usage(msg)) => {
            eprintln!("eikit: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::NonConvergence(msg)) => {
            eprintln!("eikit: {msg}");
            ExitCode::from(3)
        }
    }
}

fn run(command: Command) -> Result<bool, Failure> {
    match command {
        Command::Eval {
            function,
            x,
            method,
            tol,
            format,
        } => cmd_eval(function, x, method, tol, format),
        Command::Constants { format } => cmd_constants(format),
        Command::Table {
            function,
            x_min,
            x_max,
            points,
            format,
            skip_singular,
        } => cmd_table(function, x_min, x_max, points, format, skip_singular),
        Command::Verify { tol_scale, format } => cmd_verify(tol_scale, format),
    }
}

/// Builds the (policy, config) pair, folding in a user tolerance.
fn tolerances(tol: Option<f64>) -> Result<(SeriesPolicy, QuadConfig), Failure> {
    let mut policy = SeriesPolicy::default();
    let mut cfg = QuadConfig::default();
    if let Some(t) = tol {
        if !t.is_finite() || t <= 0.0 {
            return Err(Failure::Usage(
                "--tol must be a finite positive number".into(),
            ));
        }
        policy.abs_tol = t;
        cfg.abs_tol = t;
    }
    Ok((policy, cfg))
}

fn require_finite(name: &str, value: f64) -> Result<(), Failure> {
    if value.is_finite() {
        Ok(())
    } else {
        Err(Failure::Usage(format!(
            "{name} must be a finite number in plain decimal or scientific notation"
        )))
    }
}

/// A single evaluation outcome, shared by eval and table.
#[derive(Serialize)]
struct Row {
    value: f64,
    error_bound: f64,
    method: String,
    work: usize,
}

impl From<EvalResult> for Row {
    fn from(r: EvalResult) -> Self {
        Row {
            value: r.value,
            error_bound: r.error_bound,
            method: r.method.to_string(),
            work: r.work,
        }
    }
}

fn li_log_arg(x: f64) -> Result<f64, EvalError> {
    if !x.is_finite() || x <= 0.0 {
        return Err(EvalError::Domain("li requires finite x > 0".into()));
    }
    if x == 1.0 {
        return Err(EvalError::Domain(
            "li is undefined at x = 1 (log 1 = 0 and Ei is undefined at 0)".into(),
        ));
    }
    Ok(x.ln())
}

/// Ei through the integration-by-parts route: ∫₁ˣ eᵗ/t dt + Ei(1).
fn ei_via_lemma1(x: f64, policy: &SeriesPolicy) -> Result<EvalResult, EvalError> {
    let l = lemma1_series(x, policy)?;
    if l.cancellation_warning() {
        eprintln!(
            "eikit: warning: lemma1 route at x = {x} has cancellation amplification {:.1e}",
            l.amplification
        );
    }
    let one = ei_one(policy)?;
    Ok(EvalResult {
        value: l.eval.value + one.value,
        error_bound: l.eval.error_bound + one.error_bound,
        method: l.eval.method,
        work: l.eval.work + one.work,
    })
}

fn evaluate(
    function: FunctionArg,
    x: f64,
    method: MethodArg,
    policy: &SeriesPolicy,
    cfg: &QuadConfig,
) -> Result<Row, Failure> {
    let row: Row = match function {
        FunctionArg::Ei => match method {
            MethodArg::Series | MethodArg::Auto => ei_series(x, policy)?.into(),
            MethodArg::Quadrature => ei_quadrature(x, cfg)?.into(),
            MethodArg::Lemma1 => ei_via_lemma1(x, policy)?.into(),
        },
        FunctionArg::Li => match method {
            MethodArg::Series | MethodArg::Auto => li(x, policy)?.into(),
            MethodArg::Quadrature => li_quadrature(x, cfg)?.into(),
            MethodArg::Lemma1 => {
                let log_x = li_log_arg(x)?;
                ei_via_lemma1(log_x, policy)?.into()
            }
        },
        FunctionArg::GoodwinStaton => match method {
            MethodArg::Series | MethodArg::Auto => goodwin_staton_rhs(x, policy)?.into(),
            MethodArg::Quadrature => {
                let quad = goodwin_staton_lhs(x, cfg)?;
                if !quad.converged {
                    return Err(Failure::NonConvergence(format!(
                        "goodwin_staton quadrature did not converge after {} evaluations",
                        quad.evaluations
                    )));
                }
                Row {
                    value: quad.value,
                    error_bound: quad.error_estimate,
                    method: "CpvQuadrature".into(),
                    work: quad.evaluations,
                }
            }
            MethodArg::Lemma1 => {
                return Err(Failure::Usage(
                    "method lemma1 applies to ei and li only".into(),
                ));
            }
        },
    };
    Ok(row)
}

#[derive(Serialize)]
struct EvalInputs<'a> {
    function: &'a str,
    x: f64,
    method: &'a str,
    tol: Option<f64>,
}

#[derive(Serialize)]
struct EvalDoc<'a> {
    command: &'static str,
    inputs: EvalInputs<'a>,
    results: Row,
}

fn cmd_eval(
    function: FunctionArg,
    x: f64,
    method: MethodArg,
    tol: Option<f64>,
    format: FormatArg,
) -> Result<bool, Failure> {
    require_finite("--x", x)?;
    let (policy, cfg) = tolerances(tol)?;
    let row = evaluate(function, x, method, &policy, &cfg)?;
    match format {
        FormatArg::Text => {
            println!("function    = {}", function.name());
            println!("x           = {}", fmt17(x));
            println!("value       = {}", fmt17(row.value));
            println!("error_bound = {}", fmt17(row.error_bound));
            println!("method      = {}", row.method);
            println!("work        = {}", row.work);
        }
        FormatArg::Json => {
            let doc = EvalDoc {
                command: "eval",
                inputs: EvalInputs {
                    function: function.name(),
                    x,
                    method: method.name(),
                    tol,
                },
                results: row,
            };
            println!("{}", to_json(&doc));
        }
        FormatArg::Csv => {
            let rows = vec![vec![
                fmt17(x),
                fmt17(row.value),
                fmt17(row.error_bound),
                row.method.clone(),
                row.work.to_string(),
            ]];
            print!(
                "{}",
                csv(&["x", "value", "error_bound", "method", "work"], &rows)
            );
        }
    }
    Ok(true)
}

#[derive(Serialize)]
struct GammaRoutes {
    integral_formula: f64,
    harmonic_oracle: f64,
    ei_route: f64,
    max_pairwise_diff: f64,
}

#[derive(Serialize)]
struct EiOneRoutes {
    series: f64,
    quadrature: f64,
    abs_diff: f64,
}

#[derive(Serialize)]
struct ConstantsResults {
    gamma: GammaRoutes,
    ei_one: EiOneRoutes,
    soldner_mu: f64,
}

#[derive(Serialize)]
struct ConstantsDoc {
    command: &'static str,
    inputs: serde_json::Map<String, serde_json::Value>,
    results: ConstantsResults,
}

fn cmd_constants(format: FormatArg) -> Result<bool, Failure> {
    let policy = SeriesPolicy::default();
    let cfg = QuadConfig::default();

    let integral = gamma_integral(&cfg);
    if !integral.converged {
        return Err(Failure::NonConvergence(format!(
            "gamma integral did not converge after {} evaluations",
            integral.evaluations
        )));
    }
    let harmonic_oracle = gamma_reference(1_000_000);
    let ei_quad_one = ei_quadrature(1.0, &cfg)?;
    let tail_one = puiseux_tail(1.0, &policy)?;
    let ei_route = ei_quad_one.value - tail_one.value;
    let gamma_diff = (integral.value - harmonic_oracle)
        .abs()
        .max((integral.value - ei_route).abs())
        .max((harmonic_oracle - ei_route).abs());

    let ei_series_one = ei_one(&policy)?;
    let ei_diff = (ei_series_one.value - ei_quad_one.value).abs();
    let mu = soldner_constant(1e-12)?;

    let results = ConstantsResults {
        gamma: GammaRoutes {
            integral_formula: integral.value,
            harmonic_oracle,
            ei_route,
            max_pairwise_diff: gamma_diff,
        },
        ei_one: EiOneRoutes {
            series: ei_series_one.value,
            quadrature: ei_quad_one.value,
            abs_diff: ei_diff,
        },
        soldner_mu: mu,
    };

    match format {
        FormatArg::Text => {
            println!(
                "gamma (integral formula) = {}",
                fmt17(results.gamma.integral_formula)
            );
            println!(
                "gamma (harmonic oracle)  = {}",
                fmt17(results.gamma.harmonic_oracle)
            );
            println!(
                "gamma (ei route)         = {}",
                fmt17(results.gamma.ei_route)
            );
            println!(
                "gamma max pairwise diff  = {}",
                fmt17(results.gamma.max_pairwise_diff)
            );
            println!(
                "Ei(1) (series)           = {}",
                fmt17(results.ei_one.series)
            );
            println!(
                "Ei(1) (quadrature)       = {}",
                fmt17(results.ei_one.quadrature)
            );
            println!(
                "Ei(1) abs diff           = {}",
                fmt17(results.ei_one.abs_diff)
            );
            println!("soldner mu               = {}", fmt17(results.soldner_mu));
        }
        FormatArg::Json => {
            let doc = ConstantsDoc {
                command: "constants",
                inputs: serde_json::Map::new(),
                results,
            };
            println!("{}", to_json(&doc));
        }
        FormatArg::Csv => {
            let rows = vec![
                vec![
                    "gamma".into(),
                    "integral_formula".into(),
                    fmt17(results.gamma.integral_formula),
                ],
                vec![
                    "gamma".into(),
                    "harmonic_oracle".into(),
                    fmt17(results.gamma.harmonic_oracle),
                ],
                vec![
                    "gamma".into(),
                    "ei_route".into(),
                    fmt17(results.gamma.ei_route),
                ],
                vec![
                    "ei_one".into(),
                    "series".into(),
                    fmt17(results.ei_one.series),
                ],
                vec![
                    "ei_one".into(),
                    "quadrature".into(),
                    fmt17(results.ei_one.quadrature),
                ],
                vec![
                    "soldner_mu".into(),
                    "root_finder".into(),
                    fmt17(results.soldner_mu),
                ],
            ];
            print!("{}", csv(&["constant", "route", "value"], &rows));
        }
    }
    Ok(true)
}

#[derive(Serialize)]
struct TableRow {
    x: f64,
    value: f64,
    error_bound: f64,
    method: String,
}

#[derive(Serialize)]
struct TableInputs<'a> {
    function: &'a str,
    x_min: f64,
    x_max: f64,
    points: usize,
    skip_singular: bool,
}

#[derive(Serialize)]
struct TableDoc<'a> {
    command: &'static str,
    inputs: TableInputs<'a>,
    results: Vec<TableRow>,
}

fn domain_violation(function: FunctionArg, x: f64) -> bool {
    match function {
        FunctionArg::Ei => x == 0.0,
        FunctionArg::Li => x <= 0.0 || x == 1.0,
        FunctionArg::GoodwinStaton => x <= 0.0 || x > eikit_core::GOODWIN_STATON_MAX_X,
    }
}

fn cmd_table(
    function: FunctionArg,
    x_min: f64,
    x_max: f64,
    points: usize,
    format: FormatArg,
    skip_singular: bool,
) -> Result<bool, Failure> {
    require_finite("--x-min", x_min)?;
    require_finite("--x-max", x_max)?;
    if x_min >= x_max {
        return Err(Failure::Usage(
            "--x-min must be strictly below --x-max".into(),
        ));
    }
    if points < 2 {
        return Err(Failure::Usage("--points must be at least 2".into()));
    }
    let policy = SeriesPolicy::default();
    let cfg = QuadConfig::default();
    let step = (x_max - x_min) / (points - 1) as f64;

    let mut rows: Vec<TableRow> = Vec::with_capacity(points);
    for i in 0..points {
        let x = if i + 1 == points {
            x_max
        } else {
            x_min + step * i as f64
        };
        if domain_violation(function, x) {
            if skip_singular {
                continue;
            }
            return Err(Failure::Usage(format!(
                "grid point x = {x} is outside the domain of {}; pass --skip-singular to drop it",
                function.name()
            )));
        }
        let row = evaluate(function, x, MethodArg::Auto, &policy, &cfg)?;
        rows.push(TableRow {
            x,
            value: row.value,
            error_bound: row.error_bound,
            method: row.method,
        });
    }

    match format {
        FormatArg::Text => {
            for row in &rows {
                println!(
                    "{}  {}  {}  {}",
                    fmt17(row.x),
                    fmt17(row.value),
                    fmt17(row.error_bound),
                    row.method
                );
            }
        }
        FormatArg::Json => {
            let doc = TableDoc {
                command: "table",
                inputs: TableInputs {
                    function: function.name(),
                    x_min,
                    x_max,
                    points,
                    skip_singular,
                },
                results: rows,
            };
            println!("{}", to_json(&doc));
        }
        FormatArg::Csv => {
            let encoded: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    vec![
                        fmt17(r.x),
                        fmt17(r.value),
                        fmt17(r.error_bound),
                        r.method.clone(),
                    ]
                })
                .collect();
            print!(
                "{}",
                csv(&["x", "value", "error_bound", "method"], &encoded)
            );
        }
    }
    Ok(true)
}

#[derive(Serialize)]
struct VerifyInputs {
    tol_scale: f64,
}

#[derive(Serialize)]
struct VerifyDoc<'a> {
    command: &'static str,
    inputs: VerifyInputs,
    generated_at: &'a str,
    records: &'a [CheckRecord],
    all_pass: bool,
}

fn cmd_verify(tol_scale: f64, format: FormatArg) -> Result<bool, Failure> {
    if !tol_scale.is_finite() || tol_scale <= 0.0 {
        return Err(Failure::Usage(
            "--tol-scale must be a finite positive number".into(),
        ));
    }
    let fixed = std::env::var("EIKIT_FIXED_TIMESTAMP").ok();
    let report = run_crosschecks_with(
        &SeriesPolicy::default(),
        &QuadConfig::default(),
        tol_scale,
        fixed.as_deref(),
    );

    match format {
        FormatArg::Text => {
            for rec in &report.records {
                let status = if rec.pass { "PASS" } else { "FAIL" };
                let diff = if rec.diff_finite {
                    format!("{:.3e}", rec.abs_diff)
                } else {
                    "non-finite".to_string()
                };
                let tolerance = format!("{:.3e}", rec.tolerance);
                println!(
                    "[{status}] {:<34} abs_diff = {diff:<12} tolerance = {tolerance}",
                    rec.name
                );
            }
            let failed = report.records.iter().filter(|r| !r.pass).count();
            println!(
                "{} checks: {} passed, {} failed (generated at {})",
                report.records.len(),
                report.records.len() - failed,
                failed,
                report.generated_at
            );
        }
        FormatArg::Json => {
            let doc = VerifyDoc {
                command: "verify",
                inputs: VerifyInputs { tol_scale },
                generated_at: &report.generated_at,
                records: &report.records,
                all_pass: report.all_pass,
            };
            println!("{}", to_json(&doc));
        }
        FormatArg::Csv => {
            let rows: Vec<Vec<String>> = report
                .records
                .iter()
                .map(|r| {
                    vec![
                        r.name.clone(),
                        fmt17(r.lhs),
                        fmt17(r.rhs),
                        fmt17(r.abs_diff),
                        fmt17(r.tolerance),
                        r.pass.to_string(),
                    ]
                })
                .collect();
            print!(
                "{}",
                csv(
                    &["name", "lhs", "rhs", "abs_diff", "tolerance", "pass"],
                    &rows
                )
            );
        }
    }
    Ok(report.all_pass)
}
