//! `hartogs`: descriptors, coefficient tables, sign scans, Kähler–Einstein profiles and
//! verification suites from the command line.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hartogs_core::bergman::{coefficient_table, conjecture_scan, rational_grid};
use hartogs_core::exact::parse_rational;
use hartogs_core::kemetric::{build_problem_with, critical_closed_form, ma_residual, Potential, SolverSpec};
use hartogs_core::numerics::QuadratureSpec;
use hartogs_core::verify::{run_suite, summarize, VerifyConfig};
use hartogs_core::{DomainDescriptor, Rational};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

const WORKERS_ENV: &str = "HARTOGS_WORKERS";

#[derive(Parser, Debug)]
#[command(name = "hartogs", version, about = "Kähler–Einstein and Bergman structures of Hartogs domains")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the descriptor of a domain as JSON.
    Info(DomainArgs),
    /// Print the exact kernel coefficient table as JSON.
    Coeffs {
        #[command(flatten)]
        domain: DomainArgs,
        /// Exponent as an exact rational, e.g. 12/17.
        #[arg(long)]
        mu: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sign reports of the kernel coefficients over a rational grid of exponents.
    Conjecture {
        #[command(flatten)]
        domain: DomainArgs,
        /// Exponent grid "start:step:end" in exact rationals, end inclusive.
        #[arg(long)]
        grid: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Kähler–Einstein potential.
    #[command(subcommand)]
    Ke(KeCommand),
    /// Run a named property suite and print one line per invariant.
    Verify(VerifyArgs),
}

#[derive(Subcommand, Debug)]
enum KeCommand {
    /// Solve the reduced equation on a grid of X values.
    Solve {
        #[command(flatten)]
        problem: ProblemArgs,
        /// X grid "start:step:end", end inclusive, within [0, 1).
        #[arg(long)]
        grid: String,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate g at points read from a JSON file of {"z": [[re, im], ...], "Z": [[re, im], ...]}.
    EvalG {
        #[command(flatten)]
        problem: ProblemArgs,
        #[arg(long)]
        input: PathBuf,
        /// Use the closed form at the critical exponent instead of the solver.
        #[arg(long)]
        closed_form: bool,
        /// Also compute the Monge–Ampère residual and fail if any exceeds this value.
        #[arg(long)]
        residual_tol: Option<f64>,
        /// Finite-difference step for the residual.
        #[arg(long, default_value_t = 1e-3)]
        step: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
struct DomainArgs {
    /// Family label: I, II, III, IV, V or VI.
    #[arg(long = "type")]
    family: String,
    /// Family parameter; repeat for I(m, n).
    #[arg(long = "param")]
    params: Vec<u32>,
}

#[derive(Args, Debug)]
struct ProblemArgs {
    #[command(flatten)]
    domain: DomainArgs,
    /// Fiber dimension.
    #[arg(long, default_value_t = 1)]
    k: usize,
    /// Exponent as an exact rational; defaults to the critical exponent.
    #[arg(long)]
    mu: Option<String>,
    #[command(flatten)]
    tolerances: ToleranceArgs,
}

#[derive(Args, Debug)]
struct ToleranceArgs {
    /// Absolute quadrature tolerance.
    #[arg(long)]
    quad_abs_tol: Option<f64>,
    /// Relative quadrature tolerance.
    #[arg(long)]
    quad_rel_tol: Option<f64>,
    /// Subdivision budget of the adaptive quadrature.
    #[arg(long)]
    max_subdivisions: Option<usize>,
    /// Bracket width at which root finding stops.
    #[arg(long)]
    root_tol: Option<f64>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Suite name (exact, numerics, octonion, exceptional, domains, bergman, kemetric) or all.
    #[arg(long, default_value = "all")]
    suite: String,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Trials for algebraic identities.
    #[arg(long, default_value_t = 200)]
    trials: usize,
    /// Trials for operator determinants.
    #[arg(long, default_value_t = 50)]
    determinant_trials: usize,
    /// Random points for Monge–Ampère residuals.
    #[arg(long, default_value_t = 20)]
    residual_points: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(flatten)]
    tolerances: ToleranceArgs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
    Text,
}

/// Failure with its exit code: 1 for failed checks or numerical errors, 2 for invalid input.
#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Self { code: 2, message: message.into() }
    }

    fn check(message: impl Into<String>) -> Self {
        Self { code: 1, message: message.into() }
    }
}

impl From<hartogs_core::Error> for Failure {
    fn from(e: hartogs_core::Error) -> Self {
        Self { code: if e.is_input_error() { 2 } else { 1 }, message: e.to_string() }
    }
}

type CliResult<T> = Result<T, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(f) = configure_workers() {
        eprintln!("error: {}", f.message);
        return ExitCode::from(f.code);
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn configure_workers() -> CliResult<()> {
    let Ok(raw) = std::env::var(WORKERS_ENV) else {
        return Ok(());
    };
    let n: usize = raw
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Failure::input(format!("{WORKERS_ENV} must be a positive integer, got {raw:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Failure::check(format!("cannot start worker pool: {e}")))
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Info(domain) => emit(&to_json(&descriptor(&domain)?.to_json())?, None),
        Command::Coeffs { domain, mu, out } => {
            let table = coefficient_table(&descriptor(&domain)?, &parse_rational(&mu)?)?;
            emit(&to_json(&table.to_json())?, out.as_deref())
        }
        Command::Conjecture { domain, grid, out } => {
            let desc = descriptor(&domain)?;
            let mus = parse_rational_grid(&grid)?;
            let reports: Vec<_> = conjecture_scan(&desc, &mus)?.iter().map(|r| r.to_json()).collect();
            emit(&to_json(&reports)?, out.as_deref())
        }
        Command::Ke(KeCommand::Solve { problem, grid, format, out }) => {
            let (desc, mu) = problem_inputs(&problem)?;
            let xs = parse_x_grid(&grid)?;
            let pb = build_problem_with(&desc, problem.k, &mu, solver_spec(&problem.tolerances)?)?;
            let profile = pb.profile(&xs)?;
            let text = match format {
                Format::Csv => profile.to_csv(),
                Format::Json => to_json(&profile)?,
                Format::Text => return Err(Failure::input("ke solve writes csv or json")),
            };
            emit(&text, out.as_deref())
        }
        Command::Ke(KeCommand::EvalG { problem, input, closed_form, residual_tol, step, out }) => {
            eval_g(&problem, &input, closed_form, residual_tol, step, out.as_deref())
        }
        Command::Verify(args) => verify(&args),
    }
}

fn descriptor(args: &DomainArgs) -> CliResult<DomainDescriptor> {
    Ok(DomainDescriptor::parse(&args.family, &args.params)?)
}

fn problem_inputs(args: &ProblemArgs) -> CliResult<(DomainDescriptor, Rational)> {
    let desc = descriptor(&args.domain)?;
    let mu = match &args.mu {
        Some(s) => parse_rational(s)?,
        None => desc.mu0.clone(),
    };
    Ok((desc, mu))
}

fn solver_spec(t: &ToleranceArgs) -> CliResult<SolverSpec> {
    let base = SolverSpec::default();
    let quadrature = QuadratureSpec {
        abs_tol: t.quad_abs_tol.unwrap_or(base.quadrature.abs_tol),
        rel_tol: t.quad_rel_tol.unwrap_or(base.quadrature.rel_tol),
        max_subdivisions: t.max_subdivisions.unwrap_or(base.quadrature.max_subdivisions),
    };
    quadrature.validate()?;
    let root_tol = t.root_tol.unwrap_or(base.root_tol);
    if !(root_tol > 0.0 && root_tol.is_finite()) {
        return Err(Failure::input(format!("root tolerance must be positive, got {root_tol}")));
    }
    Ok(SolverSpec { quadrature, root_tol })
}

fn split_grid(spec: &str) -> CliResult<[&str; 3]> {
    let parts: Vec<&str> = spec.split(':').collect();
    <[&str; 3]>::try_from(parts).map_err(|_| Failure::input(format!("grid {spec:?} must have the form start:step:end")))
}

fn parse_rational_grid(spec: &str) -> CliResult<Vec<Rational>> {
    let [a, s, b] = split_grid(spec)?;
    Ok(rational_grid(&parse_rational(a)?, &parse_rational(s)?, &parse_rational(b)?)?)
}

/// Inclusive float grid; the end point is kept when it lies within a rounding error of a step.
fn parse_x_grid(spec: &str) -> CliResult<Vec<f64>> {
    let [a, s, b] = split_grid(spec)?;
    let num = |t: &str| t.trim().parse::<f64>().map_err(|_| Failure::input(format!("grid bound {t:?} is not a number")));
    let (start, step, end) = (num(a)?, num(s)?, num(b)?);
    if !(0.0..1.0).contains(&start) || !(0.0..1.0).contains(&end) || end < start {
        return Err(Failure::input(format!("X grid bounds must satisfy 0 <= start <= end < 1, got {spec:?}")));
    }
    if !(step > 0.0) {
        return Err(Failure::input("grid step must be positive"));
    }
    let count = ((end - start) / step + 1e-9).floor() as usize + 1;
    if count > 1_000_000 {
        return Err(Failure::input("grid has more than 10^6 points"));
    }
    Ok((0..count).map(|i| (start + step * i as f64).min(end)).collect())
}

#[derive(Deserialize)]
struct PointInput {
    z: Vec<[f64; 2]>,
    #[serde(rename = "Z")]
    big_z: Vec<[f64; 2]>,
}

#[derive(Serialize)]
struct PointOutput {
    z: Vec<[f64; 2]>,
    #[serde(rename = "Z")]
    big_z: Vec<[f64; 2]>,
    g: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    residual: Option<f64>,
}

fn complex(v: &[[f64; 2]]) -> Vec<Complex64> {
    v.iter().map(|p| Complex64::new(p[0], p[1])).collect()
}

fn eval_g(
    args: &ProblemArgs,
    input: &Path,
    closed_form: bool,
    residual_tol: Option<f64>,
    step: f64,
    out: Option<&Path>,
) -> CliResult<()> {
    let (desc, mu) = problem_inputs(args)?;
    let raw = fs::read_to_string(input).map_err(|e| Failure::input(format!("cannot read {}: {e}", input.display())))?;
    let points: Vec<PointInput> =
        serde_json::from_str(&raw).map_err(|e| Failure::input(format!("malformed point file: {e}")))?;
    let potential: Box<dyn Potential> = if closed_form {
        if mu != desc.mu0 {
            return Err(Failure::input(format!("the closed form needs mu = {}", desc.mu0)));
        }
        Box::new(critical_closed_form(&desc, args.k)?)
    } else {
        Box::new(build_problem_with(&desc, args.k, &mu, solver_spec(&args.tolerances)?)?)
    };
    let mut rows = Vec::with_capacity(points.len());
    let mut worst: f64 = 0.0;
    for p in points {
        let (z, big) = (complex(&p.z), complex(&p.big_z));
        if z.len() != desc.dim() || big.len() != args.k {
            return Err(Failure::input(format!(
                "point has {}+{} coordinates, expected {}+{}",
                z.len(),
                big.len(),
                desc.dim(),
                args.k
            )));
        }
        let g = potential.g(&z, &big)?;
        let residual = match residual_tol {
            Some(_) => Some(ma_residual(potential.as_ref(), &z, &big, step)?),
            None => None,
        };
        worst = worst.max(residual.unwrap_or(0.0));
        rows.push(PointOutput { z: p.z, big_z: p.big_z, g, residual });
    }
    emit(&to_json(&rows)?, out)?;
    match residual_tol {
        Some(tol) if worst > tol => Err(Failure::check(format!("residual {worst:e} exceeds {tol:e}"))),
        _ => Ok(()),
    }
}

fn verify(args: &VerifyArgs) -> CliResult<()> {
    let cfg = VerifyConfig {
        seed: args.seed,
        identity_trials: args.trials,
        determinant_trials: args.determinant_trials,
        residual_points: args.residual_points,
        solver: solver_spec(&args.tolerances)?,
    };
    let results = run_suite(&args.suite, &cfg)?;
    let (passed, failed) = summarize(&results);
    let text = match args.format {
        Format::Json => to_json(&results)?,
        Format::Text => {
            let mut s: String = results.iter().map(|r| format!("{r}\n")).collect();
            s.push_str(&format!("{passed} passed, {failed} failed\n"));
            s
        }
        Format::Csv => return Err(Failure::input("verify writes text or json")),
    };
    emit(&text, None)?;
    if failed > 0 {
        return Err(Failure::check(format!("{failed} invariant(s) failed")));
    }
    Ok(())
}

fn to_json<T: Serialize>(value: &T) -> CliResult<String> {
    serde_json::to_string_pretty(value)
        .map(|mut s| {
            s.push('\n');
            s
        })
        .map_err(|e| Failure::check(format!("serialization failed: {e}")))
}

fn emit(text: &str, out: Option<&Path>) -> CliResult<()> {
    let res = match out {
        Some(path) => fs::write(path, text),
        None => io::stdout().lock().write_all(text.as_bytes()),
    };
    res.map_err(|e| Failure::check(format!("cannot write output: {e}")))
}
