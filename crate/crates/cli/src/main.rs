//! `qutwist` — invariants, class and canonical form of three-qubit states.
//!
//! Exit status: 0 success, 1 a check or witness failed, 2 bad input.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use qutwist_core::anchors::{anchor_table, ANCHOR_TOL};
use qutwist_core::classify::DEFAULT_TOL;
use qutwist_core::io::read_state;
use qutwist_core::{acin_canonical, classify, full_report, run_sweep, Check, EnsembleKind, EnsembleSpec, Error, OperatorKind, SweepOptions};

const CANONICAL_RESIDUAL: f64 = 1e-10;

#[derive(Parser)]
#[command(name = "qutwist", version, about = "Twistor invariants and SLOCC class of three-qubit pure states")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Scramble {
    Unitary,
    SpecialLinear,
    General,
}

impl From<Scramble> for OperatorKind {
    fn from(s: Scramble) -> Self {
        match s {
            Scramble::Unitary => OperatorKind::Unitary,
            Scramble::SpecialLinear => OperatorKind::SpecialLinear,
            Scramble::General => OperatorKind::GeneralInvertible,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Every invariant and cross-check of a state file, as JSON.
    Analyze { file: PathBuf },
    /// SLOCC class with its witnesses.
    Classify {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// Local-unitary canonical form(s).
    Canonical {
        file: PathBuf,
        /// Three-tangle threshold separating one form from two.
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// Monte Carlo sweep over a random ensemble.
    Sweep {
        /// gaussian | sphere-uniform | generalized-ghz | class:<Label>
        #[arg(long)]
        ensemble: String,
        #[arg(long)]
        count: usize,
        #[arg(long)]
        seed: u64,
        /// Comma-separated check names, or `all`.
        #[arg(long, default_value = "kempe,ckw,monogamy,plucker,paths")]
        checks: String,
        /// Write per-state CSV rows here.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Worker threads (0 = one per core).
        #[arg(long, default_value_t = 0)]
        workers: usize,
        /// Condition-number bound for class-conditioned operators.
        #[arg(long, default_value_t = qutwist_core::ensemble::DEFAULT_BOUND)]
        bound: f64,
        #[arg(long, value_enum, default_value = "general")]
        scramble: Scramble,
        /// Classifier tolerance for the `class` column and check.
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// Reference values on GHZ, W and the biseparable Bell states.
    Selftest,
}

fn input_error(e: Error) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(2)
}

fn verdict(ok: bool) -> ExitCode {
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

// a closed pipe (`| head`) is not an error worth a panic
fn emit(line: &str) {
    let _ = writeln!(std::io::stdout(), "{line}");
}

fn print_json<S: serde::Serialize>(v: &S) {
    emit(&serde_json::to_string_pretty(v).expect("serializable"));
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Analyze { file } => {
            let (state, _) = match read_state(&file) {
                Ok(s) => s,
                Err(e) => return input_error(e),
            };
            let report = full_report(&state);
            print_json(&report);
            for d in report.failures() {
                eprintln!("check {} failed: residual {:e} > {:e}", d.name, d.residual, d.tolerance);
            }
            verdict(report.all_passed())
        }
        Command::Classify { file, tol } => {
            let (state, _) = match read_state(&file) {
                Ok(s) => s,
                Err(e) => return input_error(e),
            };
            let class = classify(&state, tol);
            print_json(&class);
            for d in &class.diagnostics {
                eprintln!("witness conflict: {d}");
            }
            verdict(class.consistent())
        }
        Command::Canonical { file, tol } => {
            let (state, _) = match read_state(&file) {
                Ok(s) => s,
                Err(e) => return input_error(e),
            };
            match acin_canonical(&state, tol) {
                Ok(forms) => {
                    print_json(&forms);
                    verdict(forms.iter().all(|f| f.residual <= CANONICAL_RESIDUAL))
                }
                Err(e) => input_error(e),
            }
        }
        Command::Sweep {
            ensemble,
            count,
            seed,
            checks,
            out,
            workers,
            bound,
            scramble,
            tol,
        } => {
            let setup = || -> qutwist_core::Result<(EnsembleSpec, Vec<Check>)> {
                let kind: EnsembleKind = ensemble.parse()?;
                let spec = EnsembleSpec::new(kind, count, seed)?.with_bound(bound)?.with_scramble(scramble.into());
                Ok((spec, Check::parse_list(&checks)?))
            };
            let (spec, checks) = match setup() {
                Ok(v) => v,
                Err(e) => return input_error(e),
            };
            let opts = SweepOptions {
                workers,
                rows: out.is_some(),
                classify_tol: Some(tol),
            };
            let result = match run_sweep(&spec, &checks, &opts) {
                Ok(r) => r,
                Err(e) => return input_error(e),
            };
            if let Some(path) = out {
                if let Err(e) = fs::write(&path, result.csv()) {
                    return input_error(Error::Io(format!("{}: {e}", path.display())));
                }
            }
            print_json(&result);
            eprintln!("{} states in {:.3} s on {} workers", result.count, result.elapsed_seconds, result.workers);
            verdict(result.total_violations() == 0)
        }
        Command::Selftest => {
            let table = anchor_table();
            for a in &table {
                emit(&format!(
                    "{} {:<5} {:<10} expected {:>20.17} got {:>23.17e}",
                    if a.passed { "PASS" } else { "FAIL" },
                    a.state,
                    a.quantity,
                    a.expected,
                    a.actual
                ));
            }
            let failed = table.iter().filter(|a| !a.passed).count();
            emit(&format!("{} anchors, {} failed (absolute tolerance {:e})", table.len(), failed, ANCHOR_TOL));
            verdict(failed == 0)
        }
    }
}
