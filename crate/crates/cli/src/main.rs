//! `kakeya`: seeds → construction → verification → certification.
//!
//! Exit codes: 0 pass, 1 verification or certification failure, 2 invalid
//! input or violated precondition.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use kakeya_core::construction::{assemble, KakeyaSet};
use kakeya_core::polymethod::{bound_best, bound_grid, certify_theorem6, DEFAULT_R_MAX};
use kakeya_core::scalar::DEFAULT_TOL;
use kakeya_core::seeds::{load_seed, seed_report, seed_to_json, SeedParams, SeedRegistry};
use kakeya_core::verify::verify_all;
use serde_json::Value;
use thiserror::Error;

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Invalid(String),
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Failed(_) => 1,
            CliError::Invalid(_) => 2,
        }
    }
}

fn invalid(e: impl std::fmt::Display) -> CliError {
    CliError::Invalid(e.to_string())
}

#[derive(Parser)]
#[command(
    name = "kakeya",
    version,
    about = "Lifted Kakeya-type line sets and their polynomial-method bounds"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Lift a planar seed to dimension n and write the line/point set as JSON.
    Construct(ConstructArgs),
    /// Re-verify a constructed set; prints one report per check.
    Verify(VerifyArgs),
    /// Evaluate binom(rN+n-1, n) / binom(2r+n-2, n) exactly.
    Bound(BoundArgs),
    /// Solve for a vanishing polynomial and check its top part on the directions.
    Certify(CertifyArgs),
    /// Re-check a seed file.
    SeedReport(SeedReportArgs),
}

#[derive(Args)]
struct ConstructArgs {
    /// conic, ngon or file:<path>
    #[arg(long)]
    seed: String,
    /// Field size for the conic seed.
    #[arg(long)]
    q: Option<u64>,
    /// Number of lines for the N-gon seed.
    #[arg(long = "N")]
    big_n: Option<usize>,
    #[arg(long)]
    dim: usize,
    /// Output path; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write the planar seed document here.
    #[arg(long)]
    emit_seed: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    path: PathBuf,
    /// Also check the grid bound at this r.
    #[arg(long)]
    r: Option<u64>,
    /// Print every witness instead of the first 10.
    #[arg(long)]
    verbose: bool,
}

#[derive(Args)]
struct BoundArgs {
    #[arg(long = "N")]
    big_n: u64,
    #[arg(long)]
    dim: u64,
    #[arg(long, conflicts_with = "optimize")]
    r: Option<u64>,
    /// Sweep r = 1..=r-max and report the best.
    #[arg(long)]
    optimize: bool,
    #[arg(long, requires = "optimize")]
    r_max: Option<u64>,
}

#[derive(Args)]
struct CertifyArgs {
    path: PathBuf,
    #[arg(long)]
    r: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SeedReportArgs {
    path: PathBuf,
}

fn tolerance() -> Result<f64, CliError> {
    match std::env::var("KAKEYA_TOL") {
        Ok(v) => match v.trim().parse::<f64>() {
            Ok(t) if t.is_finite() && t > 0.0 => Ok(t),
            _ => Err(invalid(format!(
                "KAKEYA_TOL must be a positive number, got {v:?}"
            ))),
        },
        Err(_) => Ok(DEFAULT_TOL),
    }
}

fn write_output(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(p) => std::fs::write(p, format!("{text}\n"))
            .map_err(|e| invalid(format!("{}: {e}", p.display()))),
        None => {
            emit(text);
            Ok(())
        }
    }
}

/// Prints to standard output; a closed pipe is not an error.
fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{text}");
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values serialize")
}

fn load_set(path: &Path) -> Result<KakeyaSet, CliError> {
    let text =
        std::fs::read_to_string(path).map_err(|e| invalid(format!("{}: {e}", path.display())))?;
    KakeyaSet::from_json(&text).map_err(|e| invalid(format!("{}: {e}", path.display())))
}

fn construct(a: &ConstructArgs) -> Result<(), CliError> {
    let family = a.seed.split(':').next().unwrap_or_default();
    match (family, a.q, a.big_n) {
        ("conic", None, _) => return Err(invalid("--seed conic needs --q")),
        ("conic", _, Some(_)) => return Err(invalid("--seed conic takes --q, not --N")),
        ("ngon", _, None) => return Err(invalid("--seed ngon needs --N")),
        ("ngon", Some(_), _) => return Err(invalid("--seed ngon takes --N, not --q")),
        ("file", Some(_), _) | ("file", _, Some(_)) => {
            return Err(invalid("--seed file:<path> takes neither --q nor --N"))
        }
        _ => {}
    }
    if a.dim < 2 {
        return Err(invalid(format!("--dim must be at least 2, got {}", a.dim)));
    }
    // N >= 2(n-1) is checkable before building the seed
    let n_lines = a.q.map(|q| q as usize).or(a.big_n);
    if let Some(n_lines) = n_lines {
        if n_lines < 2 * (a.dim - 1) {
            return Err(invalid(format!(
                "dimension {} needs N >= 2(n-1) = {}, but N = {n_lines}",
                a.dim,
                2 * (a.dim - 1)
            )));
        }
    }
    let params = SeedParams {
        q: a.q,
        n_lines: a.big_n,
        path: None,
        tol: Some(tolerance()?),
    };
    let seed = SeedRegistry::with_builtins()
        .build(&a.seed, &params)
        .map_err(invalid)?;
    if let Some(p) = &a.emit_seed {
        write_output(Some(p), &seed_to_json(&seed))?;
    }
    let k = assemble(&seed, a.dim).map_err(invalid)?;
    write_output(a.out.as_deref(), &k.to_json())
}

fn verify(a: &VerifyArgs) -> Result<(), CliError> {
    let k = load_set(&a.path)?;
    let reports = verify_all(&k, a.r);
    let json: Vec<Value> = reports.iter().map(|r| r.to_json(a.verbose)).collect();
    emit(&pretty(&Value::Array(json)));
    let failed: Vec<&str> = reports
        .iter()
        .filter(|r| !r.pass)
        .map(|r| r.check.as_str())
        .collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Failed(format!(
            "failed checks: {}",
            failed.join(", ")
        )))
    }
}

fn bound(a: &BoundArgs) -> Result<(), CliError> {
    let report = if a.optimize {
        bound_best(a.big_n, a.dim, a.r_max.unwrap_or(DEFAULT_R_MAX))
    } else {
        bound_grid(
            a.big_n,
            a.dim,
            a.r.ok_or_else(|| invalid("give --r or --optimize"))?,
        )
    }
    .map_err(invalid)?;
    emit(&pretty(&report.to_json()));
    Ok(())
}

fn certify(a: &CertifyArgs) -> Result<(), CliError> {
    let k = load_set(&a.path)?;
    let mut cert = certify_theorem6(&k, a.r).map_err(invalid)?;
    cert.source = Some(a.path.display().to_string());
    write_output(a.out.as_deref(), &pretty(&cert.to_json()))?;
    if cert.verdict.passed() {
        Ok(())
    } else {
        Err(CliError::Failed(format!(
            "certificate failed: {}",
            cert.failures.join("; ")
        )))
    }
}

fn seed_report_cmd(a: &SeedReportArgs) -> Result<(), CliError> {
    let seed = load_seed(&a.path).map_err(invalid)?;
    let report = seed_report(&seed);
    emit(&pretty(&report.to_json()));
    if report.pass {
        Ok(())
    } else {
        Err(CliError::Failed(format!(
            "seed fails: {}",
            report.failures.join("; ")
        )))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Construct(a) => construct(a),
        Command::Verify(a) => verify(a),
        Command::Bound(a) => bound(a),
        Command::Certify(a) => certify(a),
        Command::SeedReport(a) => seed_report_cmd(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("kakeya: {e}");
            ExitCode::from(e.code())
        }
    }
}
