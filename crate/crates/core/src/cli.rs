//! Command-line front end.
//!
//! Inputs are JSON files; outputs are plain values, CSV or JSON on stdout.
//! Exit status is 0 on success, 1 when a checked property or a registry
//! entry fails, and 2 on usage or input errors.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde::de::DeserializeOwned;
use serde::Serialize;

use crate::axioms::{self, AxiomId, AxiomReport, DEFAULT_TOL};
use crate::discounting::{discounted_value, CostFunction, Criterion};
use crate::eigen::{invariant_structure, DiscountVector, OperatorSpec, SolverOptions};
use crate::error::{Error, Result};
use crate::panel::{recover_cost, ProbeFamily};
use crate::streams::Stream;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Random streams added to the probe family by `recover-cost`.
const RECOVERY_RANDOM_STREAMS: usize = 64;

#[derive(Debug, Parser)]
#[command(name = "tempora", version, about = "Evaluate utility streams under discounting criteria")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the constant equivalent I(x).
    Eval {
        #[arg(long)]
        stream: PathBuf,
        #[arg(long)]
        criterion: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Evaluate two streams and print the preference direction.
    Compare {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        #[arg(long)]
        criterion: PathBuf,
    },
    /// Tabulate D_δ(x) + c(δ) on δ = i/N, i < N, as CSV.
    Sweep {
        #[arg(long)]
        stream: PathBuf,
        #[arg(long)]
        cost: PathBuf,
        #[arg(long)]
        grid: usize,
    },
    /// Run the axiom harness; without --axiom, the criterion's expected suite.
    Axioms {
        #[arg(long)]
        criterion: PathBuf,
        #[arg(long)]
        trials: usize,
        #[arg(long, env = "TEMPORA_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        axiom: Option<String>,
    },
    /// Lower bounds on the cost function behind a criterion, as CSV.
    RecoverCost {
        #[arg(long)]
        criterion: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        grid: Vec<f64>,
        #[arg(long, value_delimiter = ',', required = true)]
        alphas: Vec<f64>,
        #[arg(long, env = "TEMPORA_SEED", default_value_t = 0)]
        seed: u64,
    },
    /// Normalized eigenvector of the adjoint of an operator.
    Eigen {
        #[arg(long)]
        operator: PathBuf,
        #[arg(long)]
        cesaro: bool,
    },
    /// Replay the documented counterexamples.
    Counterexamples,
}

/// Reads and deserializes a JSON file; syntax and schema errors carry the
/// position.
pub fn load_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| {
        let full = e.to_string();
        let message = match full.rsplit_once(" at line ") {
            Some((head, _)) => head.to_string(),
            None => full,
        };
        Error::Parse {
            file: path.display().to_string(),
            line: e.line(),
            column: e.column(),
            message,
        }
    })
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::RegressionFailure { .. } | Error::NonConvergence { .. } | Error::NoInvariantFound => EXIT_FAILURE,
        _ => EXIT_USAGE,
    }
}

fn io(e: std::io::Error) -> Error {
    Error::Io(e.to_string())
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("report types serialize")
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                EXIT_USAGE
            } else {
                let _ = write!(out, "{text}");
                EXIT_OK
            };
        }
    };
    match execute(&cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

/// Runs a parsed command, returning the exit status.
pub fn execute(command: &Command, out: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Eval { stream, criterion, json } => {
            let x: Stream = load_json(stream)?;
            let k: Criterion = load_json(criterion)?;
            let value = k.evaluate(&x)?;
            if *json {
                let v = serde_json::json!({ "criterion": k.kind(), "value": value });
                writeln!(out, "{}", to_json(&v)).map_err(io)?;
            } else {
                writeln!(out, "{value}").map_err(io)?;
            }
        }
        Command::Compare { a, b, criterion } => {
            let (x, y): (Stream, Stream) = (load_json(a)?, load_json(b)?);
            let k: Criterion = load_json(criterion)?;
            let (va, vb) = (k.evaluate(&x)?, k.evaluate(&y)?);
            let verdict = if (va - vb).abs() <= DEFAULT_TOL {
                "a ~ b"
            } else if va > vb {
                "a > b"
            } else {
                "b > a"
            };
            writeln!(out, "a: {va}\nb: {vb}\npreference: {verdict}").map_err(io)?;
        }
        Command::Sweep { stream, cost, grid } => {
            let x: Stream = load_json(stream)?;
            let c: CostFunction = load_json(cost)?;
            if *grid == 0 {
                return Err(Error::InvalidCost("grid must have at least one point".into()));
            }
            writeln!(out, "kind,delta,discounted,cost,total").map_err(io)?;
            let mut best: Option<(f64, f64, f64, f64)> = None;
            for i in 0..*grid {
                let delta = i as f64 / *grid as f64;
                let d = discounted_value(&x, delta)?;
                let cost = c.eval(delta);
                let total = d + cost;
                writeln!(out, "grid,{delta},{d},{cost},{total}").map_err(io)?;
                if total.is_finite() && best.is_none_or(|b| total < b.3) {
                    best = Some((delta, d, cost, total));
                }
            }
            let (delta, d, cost, total) = best.ok_or(Error::InfeasibleCost)?;
            writeln!(out, "argmin,{delta},{d},{cost},{total}").map_err(io)?;
        }
        Command::Axioms {
            criterion,
            trials,
            seed,
            axiom,
        } => {
            let k: Criterion = load_json(criterion)?;
            let suite = axioms::expected_suite(&k);
            let selected = match axiom {
                Some(id) => vec![id.parse::<AxiomId>()?],
                None => suite.clone(),
            };
            let reports = selected
                .iter()
                .map(|a| axioms::check_axiom(&k, a, *trials, *seed, DEFAULT_TOL))
                .collect::<Result<Vec<AxiomReport>>>()?;
            let json = match (axiom, reports.as_slice()) {
                (Some(_), [single]) => to_json(single),
                _ => to_json(&reports),
            };
            writeln!(out, "{json}").map_err(io)?;
            let unexpected = reports.iter().any(|r| !r.passed() && suite.contains(&r.axiom));
            return Ok(if unexpected { EXIT_FAILURE } else { EXIT_OK });
        }
        Command::RecoverCost {
            criterion,
            grid,
            alphas,
            seed,
        } => {
            let k: Criterion = load_json(criterion)?;
            let family = ProbeFamily {
                probe_alphas: alphas.clone(),
                random_streams: RECOVERY_RANDOM_STREAMS,
                seed: *seed,
            };
            writeln!(out, "delta,cost_lower_bound").map_err(io)?;
            for row in recover_cost(&k, grid, &family)? {
                writeln!(out, "{},{}", row.delta, row.cost_lower_bound).map_err(io)?;
            }
        }
        Command::Eigen { operator, cesaro } => {
            let spec: OperatorSpec = load_json(operator)?;
            let mstar = spec.matrix()?.adjoint();
            let opts = SolverOptions {
                cesaro_averaging: *cesaro,
                ..SolverOptions::default()
            };
            let result = invariant_structure(&mstar, &DiscountVector::uniform(mstar.dim()), &opts)?;
            writeln!(out, "{}", to_json(&result)).map_err(io)?;
        }
        Command::Counterexamples => {
            let entries = axioms::registry()?;
            for e in &entries {
                let values: Vec<String> = e.values.iter().map(|v| v.to_string()).collect();
                let status = if e.ok { "ok" } else { "FAIL" };
                write!(out, "{}\t{status}\t{}\t({})", e.name, e.criterion.kind(), values.join(", ")).map_err(io)?;
                if let Some(c) = e.report.as_ref().and_then(|r| r.violation.as_ref().map(|c| (r, c))) {
                    write!(out, "\tflags {} at trial {}", c.0.axiom, c.1.trial).map_err(io)?;
                }
                if let Some(detail) = &e.detail {
                    write!(out, "\t{detail}").map_err(io)?;
                }
                writeln!(out).map_err(io)?;
            }
            if entries.iter().any(|e| !e.ok) {
                return Ok(EXIT_FAILURE);
            }
        }
    }
    Ok(EXIT_OK)
}
