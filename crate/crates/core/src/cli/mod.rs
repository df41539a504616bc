//! Command-line front-end: `solve`, `check`, `raster` and `laws`.

pub mod normalize;
pub mod parse;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::lexorder::{check_all, Complex, LexError, LawReport};
use crate::oracle::{eval_direct, sample_raster, verify_with, GridSpec, OracleError, VerificationReport, DEFAULT_EPS};
use crate::region::{MembershipResult, RegionClassification};
use crate::solver::{InequalityProblem, SolutionSet, SolveError};

pub use normalize::{classify_problem, ClassifyError, Classified};
pub use parse::{parse, parse_complex, parse_expr, ParseError, SourceExpr};

pub const SCHEMA: &str = "lexineq/1";

/// Exit status for a verification mismatch or an unexpected law outcome.
pub const EXIT_MISMATCH: u8 = 2;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Classify(#[from] ClassifyError),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Law(#[from] LexError),
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error("cannot write {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("output error: {0}")]
    Output(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

#[derive(Debug, Parser)]
#[command(name = "lexineq", version, about = "Solve complex inequalities under the lexicographic order")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve an inequality and print the solution as JSON.
    Solve {
        /// Inequality in Z, e.g. "1/Z >= 1" or "Z >= 0 && i*Z >= 0".
        #[arg(allow_hyphen_values = true)]
        expr: String,
        /// Cross-check the solution against direct evaluation on [-5,5]^2.
        #[arg(long)]
        verify: bool,
        /// Write the JSON document here instead of standard output.
        #[arg(long, value_name = "PATH")]
        json: Option<PathBuf>,
        /// Boundary margin below which verification skips a probe.
        #[arg(long, default_value_t = DEFAULT_EPS, value_parser = positive_f64)]
        eps: f64,
    },
    /// Print in, out or pole for one point.
    Check {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        /// Point to test, e.g. 0.5, -2i or 1-i.
        #[arg(long, allow_hyphen_values = true, value_parser = complex_arg)]
        at: Complex,
        /// Evaluate the inequality directly instead of the solved region.
        #[arg(long)]
        oracle: bool,
    },
    /// Sample membership on a grid and write a PGM or CSV file.
    Raster {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        /// re_min,re_max,im_min,im_max
        #[arg(long, allow_hyphen_values = true, value_parser = window_arg, default_value = "-5,5,-5,5")]
        window: [f64; 4],
        /// nx,ny
        #[arg(long, value_parser = res_arg, default_value = "201,201")]
        res: (usize, usize),
        /// Output file.
        #[arg(long, value_name = "PATH")]
        out: PathBuf,
        #[arg(long, value_enum, default_value_t = RasterFormat::Pgm)]
        format: RasterFormat,
        /// Evaluate the inequality directly instead of the solved region.
        #[arg(long)]
        oracle: bool,
    },
    /// Run the randomized order-law checker and print the reports as JSON.
    Laws {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Trials per law.
        #[arg(long, default_value_t = 10_000)]
        samples: u64,
        /// Write the reports here instead of standard output.
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RasterFormat {
    Pgm,
    Csv,
}

fn positive_f64(s: &str) -> Result<f64, String> {
    match s.trim().parse::<f64>() {
        Ok(v) if v > 0.0 && v.is_finite() => Ok(v),
        Ok(_) => Err("must be a positive finite number".into()),
        Err(e) => Err(e.to_string()),
    }
}

fn complex_arg(s: &str) -> Result<Complex, String> {
    parse_complex(s).map_err(|e| e.to_string())
}

fn window_arg(s: &str) -> Result<[f64; 4], String> {
    let vals = s.split(',').map(|v| v.trim().parse::<f64>().map_err(|e| format!("`{v}`: {e}"))).collect::<Result<Vec<_>, _>>()?;
    <[f64; 4]>::try_from(vals).map_err(|_| "expected four comma-separated numbers".to_string())
}

fn res_arg(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once(',').ok_or("expected nx,ny")?;
    let nx = a.trim().parse::<usize>().map_err(|e| format!("`{a}`: {e}"))?;
    let ny = b.trim().parse::<usize>().map_err(|e| format!("`{b}`: {e}"))?;
    if nx < 2 || ny < 2 {
        return Err("resolution must be at least 2 per axis".into());
    }
    Ok((nx, ny))
}

/// The document printed by `solve`.
#[derive(Debug, Serialize)]
pub struct SolveDocument {
    pub schema: &'static str,
    pub input: String,
    pub normalized: String,
    pub shape: String,
    pub problem: InequalityProblem,
    pub denominator_scale: Vec<Option<Complex>>,
    pub solution: SolutionSet,
    pub classification: Vec<RegionClassification>,
    pub excluded_points: Vec<Complex>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verification: Option<VerificationReport>,
}

/// Parses, classifies and solves one input string.
pub fn prepare(text: &str) -> Result<(SourceExpr, Classified, SolutionSet), CliError> {
    let source = parse(text)?;
    let classified = classify_problem(&source)?;
    let solution = classified.problem.solve()?;
    Ok((source, classified, solution))
}

pub fn solve_document(text: &str, verify_eps: Option<f64>) -> Result<SolveDocument, CliError> {
    let (source, classified, solution) = prepare(text)?;
    let verification = verify_eps.map(|eps| verify_with(&classified.problem, &solution, &GridSpec::default_window(), eps, true));
    Ok(SolveDocument {
        schema: SCHEMA,
        input: source.text.clone(),
        normalized: source.to_string(),
        shape: classified.shape,
        problem: classified.problem,
        denominator_scale: classified.denominator_scale,
        classification: solution.classifications(),
        excluded_points: solution.excluded_points.clone(),
        solution,
        verification,
    })
}

/// Runs one command, writing standard output to `out`. Returns the process
/// exit status on success.
pub fn run(cli: &Cli, out: &mut impl Write) -> Result<u8, CliError> {
    match &cli.command {
        Command::Solve { expr, verify, json, eps } => {
            let doc = solve_document(expr, verify.then_some(*eps))?;
            emit(out, json.as_deref(), &to_json(&doc)?)?;
            let failed = doc.verification.as_ref().is_some_and(|v| !v.passed);
            Ok(if failed { EXIT_MISMATCH } else { 0 })
        }
        Command::Check { expr, at, oracle } => {
            let (_, classified, solution) = prepare(expr)?;
            let m: MembershipResult =
                if *oracle { eval_direct(&classified.problem, *at) } else { solution.contains(*at) };
            writeln!(out, "{m}")?;
            Ok(0)
        }
        Command::Raster { expr, window, res, out: path, format, oracle } => {
            let [re_min, re_max, im_min, im_max] = *window;
            let grid = GridSpec::new(re_min, re_max, im_min, im_max, res.0, res.1)?;
            let (_, classified, solution) = prepare(expr)?;
            let bitmap =
                if *oracle { sample_raster(&classified.problem, &grid) } else { sample_raster(&solution, &grid) };
            let body = match format {
                RasterFormat::Pgm => bitmap.to_pgm(),
                RasterFormat::Csv => bitmap.to_csv(),
            };
            write_file(path, &body)?;
            Ok(0)
        }
        Command::Laws { seed, samples, out: path } => {
            if *samples == 0 {
                return Err(CliError::Argument("--samples must be at least 1".into()));
            }
            let reports: Vec<LawReport> = check_all(*samples, *seed);
            emit(out, path.as_deref(), &to_json(&reports)?)?;
            let ok = reports.iter().all(LawReport::matches_expectation);
            Ok(if ok { 0 } else { EXIT_MISMATCH })
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

fn emit(out: &mut impl Write, path: Option<&Path>, body: &str) -> Result<(), CliError> {
    match path {
        Some(p) => write_file(p, body),
        None => Ok(out.write_all(body.as_bytes())?),
    }
}

fn write_file(path: &Path, body: &str) -> Result<(), CliError> {
    fs::write(path, body).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}
