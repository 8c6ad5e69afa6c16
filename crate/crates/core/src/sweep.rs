//! Monte Carlo sweeps: evaluate identity and inequality checks over an
//! ensemble, in parallel, with output independent of the worker count.

use std::fmt::Write as _;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::canonical::acin_canonical;
use crate::classify::{classify, SloccLabel, DEFAULT_TOL};
use crate::ensemble::{random_local, sample_with, EnsembleKind, EnsembleSpec};
use crate::error::{Error, Result};
use crate::invariants::{full_report, InvariantReport, DEGREES};
use crate::plucker::{plucker, plucker_residual};
use crate::scalar::rel_diff;
use crate::state::{apply_local, OperatorKind, PureState};
use crate::twistor::to_twistor;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Check {
    Kempe,
    Ckw,
    Monogamy,
    Plucker,
    Paths,
    SigmaLower,
    SigmaUpper,
    SigmaZero,
    LuDrift,
    Classify,
    Canonical,
}

impl Check {
    pub const ALL: [Check; 11] = [
        Check::Kempe,
        Check::Ckw,
        Check::Monogamy,
        Check::Plucker,
        Check::Paths,
        Check::SigmaLower,
        Check::SigmaUpper,
        Check::SigmaZero,
        Check::LuDrift,
        Check::Classify,
        Check::Canonical,
    ];

    pub const DEFAULT: [Check; 5] = [Check::Kempe, Check::Ckw, Check::Monogamy, Check::Plucker, Check::Paths];

    pub fn name(self) -> &'static str {
        match self {
            Check::Kempe => "kempe",
            Check::Ckw => "ckw",
            Check::Monogamy => "monogamy",
            Check::Plucker => "plucker",
            Check::Paths => "paths",
            Check::SigmaLower => "sigma-lower",
            Check::SigmaUpper => "sigma-upper",
            Check::SigmaZero => "sigma-zero",
            Check::LuDrift => "lu-drift",
            Check::Classify => "classify",
            Check::Canonical => "canonical",
        }
    }

    /// Threshold on the (already scale-normalized) residual.
    pub fn tolerance(self) -> f64 {
        match self {
            Check::Kempe => 1e-9,
            Check::Ckw => 1e-8,
            Check::Monogamy => 1e-10,
            Check::Plucker => 1e-12,
            Check::Paths => 1e-10,
            Check::SigmaLower => 1e-10,
            Check::SigmaUpper => 1e-9,
            Check::SigmaZero => 1e-9,
            Check::LuDrift => 1e-9,
            Check::Classify => 0.5,
            Check::Canonical => 1e-10,
        }
    }

    /// Comma-separated names; `all` selects everything.
    pub fn parse_list(s: &str) -> Result<Vec<Check>> {
        if s.trim() == "all" {
            return Ok(Check::ALL.to_vec());
        }
        let mut out = Vec::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let c = part.parse()?;
            if !out.contains(&c) {
                out.push(c);
            }
        }
        if out.is_empty() {
            return Err(Error::UnknownCheck(s.to_string()));
        }
        Ok(out)
    }
}

impl FromStr for Check {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Check::ALL
            .iter()
            .copied()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::UnknownCheck(s.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckSummary {
    pub name: String,
    pub tolerance: f64,
    pub evaluated: u64,
    pub violations: u64,
    pub max_residual: f64,
    /// Index of the first state attaining `max_residual`.
    pub worst_index: Option<usize>,
}

/// One CSV row.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Row {
    pub index: usize,
    pub n: f64,
    pub tau_abc: f64,
    pub tau_a: f64,
    pub tau_b: f64,
    pub tau_c: f64,
    pub tau_ab: f64,
    pub tau_ac: f64,
    pub xi: f64,
    pub omega: f64,
    pub sigma: f64,
    pub class: SloccLabel,
}

pub const CSV_HEADER: &str = "index,N,tau_ABC,tau_A,tau_B,tau_C,tau_AB,tau_AC,xi,omega,sigma,class";

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepResult {
    pub ensemble: String,
    pub count: usize,
    pub seed: u64,
    pub workers: usize,
    pub checks: Vec<CheckSummary>,
    #[serde(skip)]
    pub rows: Vec<Row>,
    /// Wall clock; kept out of the JSON so reruns are byte-identical.
    #[serde(skip)]
    pub elapsed_seconds: f64,
}

impl SweepResult {
    pub fn total_violations(&self) -> u64 {
        self.checks.iter().map(|c| c.violations).sum()
    }

    pub fn check(&self, c: Check) -> Option<&CheckSummary> {
        self.checks.iter().find(|s| s.name == c.name())
    }

    /// Rows in index order, 17 significant digits.
    pub fn csv(&self) -> String {
        let mut out = String::with_capacity(64 + self.rows.len() * 256);
        out.push_str(CSV_HEADER);
        out.push('\n');
        for r in &self.rows {
            let _ = write!(out, "{}", r.index);
            for v in [r.n, r.tau_abc, r.tau_a, r.tau_b, r.tau_c, r.tau_ab, r.tau_ac, r.xi, r.omega, r.sigma] {
                let _ = write!(out, ",{v:.16e}");
            }
            let _ = writeln!(out, ",{}", r.class);
        }
        out
    }
}

#[derive(Clone, Debug, Default)]
pub struct SweepOptions {
    /// Worker threads; 0 picks rayon's default.
    pub workers: usize,
    /// Keep per-state rows for CSV output.
    pub rows: bool,
    pub classify_tol: Option<f64>,
}

/// Largest relative drift of the report fields (except `phi`) between a
/// state and a local-unitary image of it.
pub fn lu_drift(a: &InvariantReport<f64>, b: &InvariantReport<f64>) -> f64 {
    let n = a.n.max(b.n);
    a.fields()
        .iter()
        .zip(b.fields().iter())
        .zip(DEGREES.iter())
        .filter(|(_, (name, _))| *name != "phi")
        .map(|(((_, x), (_, y)), (_, deg))| rel_diff(*x, *y, n.powf(*deg as f64 / 2.0)))
        .fold(0.0, f64::max)
}

const PATH_CHECKS: [&str; 9] = [
    "hyperdeterminant-paths",
    "three-tangle-paths",
    "tau-a-oracle",
    "tau-b-oracle",
    "tau-c-oracle",
    "flip-trace-ab-oracle",
    "flip-trace-ac-oracle",
    "flip-trace-bc-oracle",
    "flip-trace-identity",
];

fn evaluate(
    check: Check,
    spec: &EnsembleSpec,
    state: &PureState<f64>,
    report: &InvariantReport<f64>,
    label: Option<&crate::classify::SloccClass>,
    rng: &mut rand_chacha::ChaCha20Rng,
) -> Result<f64> {
    let n = report.n;
    let (n2, n3) = (n * n, n * n * n);
    Ok(match check {
        Check::Kempe => report.kempe_residual / n3.max(report.xi.abs()),
        Check::Ckw => report.ckw_residual.abs() / n2,
        Check::Monogamy => (report.tau_abc - report.tau_a_bc).max(0.0) / n2,
        Check::Plucker => {
            let p = plucker(&to_twistor(state));
            let scale = p.norm_sq();
            if scale == 0.0 {
                0.0
            } else {
                plucker_residual(&p).norm() / scale
            }
        }
        Check::Paths => report
            .diagnostics
            .iter()
            .filter(|d| PATH_CHECKS.contains(&d.name.as_str()))
            .map(|d| d.residual)
            .fold(0.0, f64::max),
        Check::SigmaLower => (-report.sigma / n3).max(0.0),
        Check::SigmaUpper => {
            if (n - 1.0).abs() <= 1e-9 {
                (report.sigma - 1.0).max(0.0)
            } else {
                (report.sigma / n3 - 1.0).max(0.0)
            }
        }
        Check::SigmaZero => report.sigma.abs() / n3,
        Check::LuDrift => {
            let u = random_local::<f64, _>(OperatorKind::Unitary, 1.0, rng)?;
            lu_drift(report, &full_report(&apply_local(state, &u)))
        }
        Check::Classify => {
            let c = label.expect("classification computed");
            let expected = match spec.kind {
                EnsembleKind::ClassConditioned(l) => Some(l),
                _ => None,
            };
            let wrong = expected.is_some_and(|l| l != c.label);
            if wrong || !c.consistent() {
                1.0
            } else {
                0.0
            }
        }
        Check::Canonical => {
            let forms = acin_canonical(state, DEFAULT_TOL)?;
            let tau = report.tau_abc / n2;
            let expected = if tau > DEFAULT_TOL { 2 } else { 1 };
            if forms.len() != expected {
                f64::INFINITY
            } else {
                forms.iter().map(|f| f.residual).fold(0.0, f64::max)
            }
        }
    })
}

struct PerState {
    residuals: Vec<f64>,
    row: Option<Row>,
}

fn per_state(spec: &EnsembleSpec, index: usize, checks: &[Check], opts: &SweepOptions) -> Result<PerState> {
    let mut rng = spec.rng(index);
    let state: PureState<f64> = sample_with(spec, &mut rng)?;
    let report = full_report(&state);
    let tol = opts.classify_tol.unwrap_or(DEFAULT_TOL);
    let class = if opts.rows || checks.contains(&Check::Classify) {
        Some(classify(&state, tol))
    } else {
        None
    };
    let mut residuals = Vec::with_capacity(checks.len());
    for &c in checks {
        let r = evaluate(c, spec, &state, &report, class.as_ref(), &mut rng)?;
        residuals.push(if r.is_nan() { f64::INFINITY } else { r });
    }
    let row = opts.rows.then(|| Row {
        index,
        n: report.n,
        tau_abc: report.tau_abc,
        tau_a: report.tau_a_bc,
        tau_b: report.tau_b_ac,
        tau_c: report.tau_c_ab,
        tau_ab: report.tau_ab,
        tau_ac: report.tau_ac,
        xi: report.xi,
        omega: report.omega,
        sigma: report.sigma,
        class: class.as_ref().map(|c| c.label).unwrap_or(SloccLabel::Null),
    });
    Ok(PerState { residuals, row })
}

pub fn run_sweep(spec: &EnsembleSpec, checks: &[Check], opts: &SweepOptions) -> Result<SweepResult> {
    spec.validate()?;
    if checks.is_empty() {
        return Err(Error::UnknownCheck("empty check list".into()));
    }
    let start = Instant::now();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.workers)
        .build()
        .map_err(|e| Error::Io(e.to_string()))?;
    let workers = pool.current_num_threads();
    let results: Vec<Result<PerState>> =
        pool.install(|| (0..spec.count).into_par_iter().map(|i| per_state(spec, i, checks, opts)).collect());

    let mut summaries: Vec<CheckSummary> = checks
        .iter()
        .map(|c| CheckSummary {
            name: c.name().to_string(),
            tolerance: c.tolerance(),
            evaluated: 0,
            violations: 0,
            max_residual: 0.0,
            worst_index: None,
        })
        .collect();
    let mut rows = Vec::new();
    for (index, r) in results.into_iter().enumerate() {
        let r = r?;
        for ((summary, &check), &res) in summaries.iter_mut().zip(checks).zip(&r.residuals) {
            summary.evaluated += 1;
            if res > check.tolerance() {
                summary.violations += 1;
            }
            if res > summary.max_residual || summary.worst_index.is_none() {
                summary.max_residual = res;
                summary.worst_index = Some(index);
            }
        }
        if let Some(row) = r.row {
            rows.push(row);
        }
    }
    Ok(SweepResult {
        ensemble: spec.kind.to_string(),
        count: spec.count,
        seed: spec.seed,
        workers,
        checks: summaries,
        rows,
        elapsed_seconds: start.elapsed().as_secs_f64(),
    })
}
