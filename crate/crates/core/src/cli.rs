//! The `interrogate` command line.
//!
//! Exit status is 0 on success, 1 when a validation check fails, and 2 for
//! bad arguments, unreadable or invalid scenario files, and unwritable output.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use num_complex::Complex;

use crate::harness::{
    derive_seed, fit_line, run_trials, scaling_sweep, trial_stream, Experiment, TrialStats, DEFAULT_CONFIDENCE,
};
use crate::io::{to_table, write_results, CsvRecord, OracleCheckRow, Scenario, TailRow};
use crate::oracle::{exact_overlap_tail, exact_round_distribution};
use crate::protocols::{build_reference_state, DefectScenario, RoundKernel, RoundOutcome};
use crate::quantum::{prepare_uniform_superposition, PixelArray};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 1;
pub const EXIT_BAD_INPUT: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "interrogate", version, about = "Photon-efficient interrogation of pixel arrays")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Repeat the defect test on a scenario and report its detection rate.
    DefectTest(ProtocolArgs),
    /// Repeat the rare-pattern search on a scenario and report its acceptance rate.
    RareSearch(ProtocolArgs),
    /// Compare quantum and classical absorptions across array sizes.
    Sweep(SweepArgs),
    /// Estimate how often a random array overlaps the pattern above 1/sqrt(n).
    OverlapTail(TailArgs),
    /// Check sampled round outcomes against their exact probabilities.
    ValidateOracle(OracleArgs),
}

#[derive(Debug, Args)]
struct ProtocolArgs {
    #[arg(long)]
    scenario: PathBuf,
    #[arg(long)]
    trials: u64,
    #[arg(long)]
    seed: u64,
    /// Run the classical baseline instead of the quantum protocol.
    #[arg(long)]
    classical: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SweepArgs {
    #[arg(long)]
    scenario: PathBuf,
    /// Comma-separated, strictly increasing array sizes.
    #[arg(long, value_delimiter = ',', required = true)]
    ns: Vec<usize>,
    #[arg(long)]
    trials: u64,
    #[arg(long)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct TailArgs {
    /// One or more comma-separated array sizes.
    #[arg(long, value_delimiter = ',', required = true)]
    n: Vec<usize>,
    #[arg(long)]
    samples: usize,
    #[arg(long)]
    seed: u64,
    /// Take the pattern from this scenario's rare search instead of all-transparent.
    #[arg(long)]
    scenario: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct OracleArgs {
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    samples: u64,
    #[arg(long)]
    seed: u64,
    /// Use this scenario's arrays instead of the built-in one.
    #[arg(long)]
    scenario: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

enum Failure {
    BadInput(String),
    Validation(String),
}

fn bad(e: impl std::fmt::Display) -> Failure {
    Failure::BadInput(e.to_string())
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_BAD_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { stdout.write_all(text.as_bytes()) } else { stderr.write_all(text.as_bytes()) };
            return code;
        }
    };
    let result = match cli.command {
        Command::DefectTest(a) => defect_test(&a, stdout),
        Command::RareSearch(a) => rare_search(&a, stdout),
        Command::Sweep(a) => sweep(&a, stdout),
        Command::OverlapTail(a) => overlap_tail(&a, stdout),
        Command::ValidateOracle(a) => validate_oracle(&a, stdout),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(Failure::BadInput(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_BAD_INPUT
        }
        Err(Failure::Validation(msg)) => {
            let _ = writeln!(stderr, "validation failed: {msg}");
            EXIT_VALIDATION
        }
    }
}

fn emit<R: CsvRecord>(rows: &[R], out: Option<&Path>, stdout: &mut dyn Write) -> Result<(), Failure> {
    stdout.write_all(to_table(rows).as_bytes()).map_err(bad)?;
    if let Some(path) = out {
        write_results(rows, path).map_err(bad)?;
    }
    Ok(())
}

fn emit_stats(stats: TrialStats, label: &str, args: &ProtocolArgs, stdout: &mut dyn Write) -> Result<(), Failure> {
    writeln!(
        stdout,
        "{label}: {}/{} ({:.0}% CI {:.6}..{:.6})",
        stats.successes,
        stats.trials,
        stats.confidence * 100.0,
        stats.ci_low,
        stats.ci_high
    )
    .map_err(bad)?;
    emit(&[stats], args.out.as_deref(), stdout)
}

fn defect_test(args: &ProtocolArgs, stdout: &mut dyn Write) -> Result<(), Failure> {
    let scenario = Scenario::load(&args.scenario).map_err(bad)?;
    let config = scenario.require_config().map_err(bad)?.clone();
    let defect = scenario.defect;
    let exp = if args.classical {
        Experiment::ClassicalDefect { scenario: defect, config }
    } else {
        Experiment::QuantumDefect { scenario: defect, config }
    };
    let stats = run_trials(&exp, args.trials, args.seed).map_err(bad)?;
    emit_stats(stats, "defect found", args, stdout)
}

fn rare_search(args: &ProtocolArgs, stdout: &mut dyn Write) -> Result<(), Failure> {
    let scenario = Scenario::load(&args.scenario).map_err(bad)?;
    let rare = scenario.require_rare().map_err(bad)?.clone();
    let exp = if args.classical {
        Experiment::ClassicalRare { actual: rare.actual, config: rare.config, shots: None }
    } else {
        Experiment::QuantumRare { actual: rare.actual, config: rare.config }
    };
    let stats = run_trials(&exp, args.trials, args.seed).map_err(bad)?;
    emit_stats(stats, "pattern accepted", args, stdout)
}

fn sweep(args: &SweepArgs, stdout: &mut dyn Write) -> Result<(), Failure> {
    let scenario = Scenario::load(&args.scenario).map_err(bad)?;
    let config = scenario.require_config().map_err(bad)?;
    let template = scenario.sweep_template().map_err(bad)?;
    let rows = scaling_sweep(&args.ns, &template, config, args.trials, args.seed).map_err(bad)?;
    emit(&rows, args.out.as_deref(), stdout)?;
    if rows.len() >= 3 {
        let xs: Vec<f64> = rows.iter().map(|r| (r.n as f64).ln()).collect();
        let ys: Vec<f64> = rows.iter().map(|r| r.ratio).collect();
        let fit = fit_line(&xs, &ys, DEFAULT_CONFIDENCE).map_err(bad)?;
        writeln!(
            stdout,
            "ratio vs ln(n): slope {:.6} (95% CI {:.6}..{:.6})",
            fit.slope, fit.slope_ci.0, fit.slope_ci.1
        )
        .map_err(bad)?;
    }
    Ok(())
}

fn overlap_tail(args: &TailArgs, stdout: &mut dyn Write) -> Result<(), Failure> {
    let pattern = match &args.scenario {
        Some(path) => {
            let s = Scenario::load(path).map_err(bad)?;
            Some(s.require_rare().map_err(bad)?.config.pattern.clone())
        }
        None => None,
    };
    let mut rows = Vec::with_capacity(args.n.len());
    for &n in &args.n {
        let pattern = match &pattern {
            Some(p) => p.clone(),
            None => PixelArray::uniform(n, Complex::new(1.0, 0.0)).map_err(bad)?,
        };
        let mut rng = trial_stream(derive_seed(args.seed, n as u64), 0);
        let tail = exact_overlap_tail(n, &pattern, args.samples, &mut rng).map_err(bad)?;
        rows.push(TailRow { n, samples: args.samples, threshold: 1.0 / (n as f64).sqrt(), tail_fraction: tail });
    }
    emit(&rows, args.out.as_deref(), stdout)
}

fn default_oracle_scenario(n: usize) -> Result<DefectScenario<f64>, Failure> {
    if n < 2 {
        return Err(Failure::BadInput("--n must be at least 2".into()));
    }
    let theoretical = PixelArray::uniform(n, Complex::new(1.0, 0.0)).map_err(bad)?;
    DefectScenario::planted(theoretical, &[(1, Complex::new(0.5, 0.0))]).map_err(bad)
}

fn validate_oracle(args: &OracleArgs, stdout: &mut dyn Write) -> Result<(), Failure> {
    let scenario = match (&args.scenario, args.n) {
        (Some(path), n) => {
            let s = Scenario::load(path).map_err(bad)?.defect;
            if let Some(n) = n.filter(|&n| n != s.len()) {
                return Err(Failure::BadInput(format!("--n {n} does not match the scenario's {} pixels", s.len())));
            }
            s
        }
        (None, n) => default_oracle_scenario(n.unwrap_or(2))?,
    };
    if args.samples == 0 {
        return Err(Failure::BadInput("--samples must be at least 1".into()));
    }
    let n = scenario.len();
    let exact = exact_round_distribution(&scenario.theoretical, &scenario.actual).map_err(bad)?.outcomes();

    let probe = prepare_uniform_superposition(n).map_err(bad)?;
    let reference = build_reference_state(&scenario.theoretical, &vec![true; n]).map_err(bad)?;
    let kernel = RoundKernel::new(&probe, &scenario.actual, &reference).map_err(bad)?;
    let mut rng = trial_stream(args.seed, 0);
    let mut counts = vec![0u64; 2 * n + 1];
    for _ in 0..args.samples {
        let slot = match kernel.sample(&mut rng) {
            RoundOutcome::Absorbed { pixel } => pixel,
            RoundOutcome::Consistent => n,
            RoundOutcome::Inconsistent { beam } => n + 1 + beam,
        };
        counts[slot] += 1;
    }

    let k = args.samples as f64;
    let rows: Vec<OracleCheckRow> = exact
        .iter()
        .zip(&counts)
        .enumerate()
        .map(|(slot, (&p, &c))| {
            let outcome = match slot {
                s if s < n => format!("absorbed@{}", s + 1),
                s if s == n => "consistent".to_owned(),
                s => format!("inconsistent@{}", s - n),
            };
            let empirical = c as f64 / k;
            let tolerance = 4.0 * (p * (1.0 - p) / k).sqrt() + 1e-12;
            OracleCheckRow { outcome, exact: p, empirical, tolerance, pass: (empirical - p).abs() <= tolerance }
        })
        .collect();
    emit(&rows, args.out.as_deref(), stdout)?;

    let total: f64 = exact.iter().sum();
    if (total - 1.0).abs() > <f64 as crate::Real>::NORM_TOL {
        return Err(Failure::Validation(format!("exact outcome probabilities sum to {total}")));
    }
    let failed: Vec<&str> = rows.iter().filter(|r| !r.pass).map(|r| r.outcome.as_str()).collect();
    if failed.is_empty() {
        writeln!(stdout, "all {} outcomes within 4 sigma", rows.len()).map_err(bad)?;
        Ok(())
    } else {
        Err(Failure::Validation(format!("outside 4 sigma: {}", failed.join(", "))))
    }
}
