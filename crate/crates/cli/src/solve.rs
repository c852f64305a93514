use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use anyhow::{bail, Context, Result};
use logqp::instances::read_qp;
use logqp::solvers::ShortStep;
use logqp::{initial_mu, AlgorithmKind, AlgorithmRegistry, QpInstance, SolveReport, SolveStatus, SolverConfig};
use nalgebra::DVector;
use serde::Serialize;

/// Starting μ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Mu0 {
    LeastSquares,
    Value(f64),
}

impl FromStr for Mu0 {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "ls" {
            return Ok(Mu0::LeastSquares);
        }
        match s.parse::<f64>() {
            Ok(v) if v > 0.0 && v.is_finite() => Ok(Mu0::Value(v)),
            _ => Err(format!("expected `ls` or a positive number, got `{s}`")),
        }
    }
}

/// Starting `v`.
#[derive(Debug, Clone, PartialEq)]
pub enum V0 {
    Zero,
    /// JSON array of `m` floats.
    File(PathBuf),
}

impl FromStr for V0 {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(if s == "zero" {
            V0::Zero
        } else {
            V0::File(PathBuf::from(s))
        })
    }
}

#[derive(Debug, Clone)]
pub struct SolveOptions {
    pub input: PathBuf,
    pub algorithm: AlgorithmKind,
    pub mu0: Mu0,
    pub v0: V0,
    pub solver: SolverConfig,
    pub theta: f64,
    pub epsilon: f64,
}

pub struct SolveOutcome {
    pub qp: QpInstance,
    pub mu0: f64,
    pub report: SolveReport,
}

impl SolveOutcome {
    pub fn exit_code(&self) -> i32 {
        exit_code(self.report.status)
    }
}

pub fn exit_code(status: SolveStatus) -> i32 {
    match status {
        SolveStatus::Solved => 0,
        SolveStatus::IterationLimit => 2,
        SolveStatus::NumericalFailure => 3,
    }
}

fn read_v0(path: &Path, m: usize) -> Result<DVector<f64>> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let values: Vec<f64> =
        serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    if values.len() != m {
        bail!("{}: v0 has {} entries, expected m = {m}", path.display(), values.len());
    }
    if values.iter().any(|x| !x.is_finite()) {
        bail!("{}: v0 contains a non-finite entry", path.display());
    }
    Ok(DVector::from_vec(values))
}

pub fn run_solve(opts: &SolveOptions) -> Result<SolveOutcome> {
    let qp = read_qp(&opts.input)?;
    qp.validate().into_result()?;
    let v0 = match &opts.v0 {
        V0::Zero => DVector::zeros(qp.m()),
        V0::File(path) => read_v0(path, qp.m())?,
    };
    let mu0 = match opts.mu0 {
        Mu0::LeastSquares => initial_mu(&qp, &v0)?,
        Mu0::Value(v) => v,
    };
    let registry = AlgorithmRegistry::with_shortstep(ShortStep {
        theta: opts.theta,
        epsilon: opts.epsilon,
    });
    let cfg = opts.solver.clone().with_algorithm(opts.algorithm);
    let report = registry.solve(&qp, &v0, mu0, &cfg)?;
    Ok(SolveOutcome { qp, mu0, report })
}

#[derive(Serialize)]
struct JsonReport<'a> {
    status: &'a str,
    algorithm: &'a str,
    objective: f64,
    gap: f64,
    mu0: f64,
    final_mu: f64,
    newton_steps: usize,
    centering_steps: usize,
    d_inf: f64,
    message: Option<&'a str>,
    x: &'a [f64],
    s: &'a [f64],
    lambda: &'a [f64],
    v: &'a [f64],
}

pub fn report_json(outcome: &SolveOutcome, algorithm: AlgorithmKind) -> String {
    let r = &outcome.report;
    let doc = JsonReport {
        status: r.status.as_str(),
        algorithm: algorithm.name(),
        objective: r.objective(&outcome.qp),
        gap: r.gap,
        mu0: outcome.mu0,
        final_mu: r.final_mu,
        newton_steps: r.newton_steps,
        centering_steps: r.centering_steps,
        d_inf: r.d_inf,
        message: r.message.as_deref(),
        x: r.x.as_slice(),
        s: r.s.as_slice(),
        lambda: r.lambda.as_slice(),
        v: r.v.as_slice(),
    };
    // Non-finite values (unsolved runs) serialize as null.
    serde_json::to_string_pretty(&doc).expect("report serializes")
}

pub fn report_text(outcome: &SolveOutcome, algorithm: AlgorithmKind) -> String {
    let r = &outcome.report;
    let mut out = String::new();
    let _ = writeln!(out, "status:          {}", r.status.as_str());
    let _ = writeln!(out, "algorithm:       {algorithm}");
    let _ = writeln!(out, "objective:       {:.10e}", r.objective(&outcome.qp));
    let _ = writeln!(out, "gap:             {:.6e}", r.gap);
    let _ = writeln!(out, "mu0:             {:.6e}", outcome.mu0);
    let _ = writeln!(out, "final mu:        {:.6e}", r.final_mu);
    let _ = writeln!(out, "iterations:      {}", r.newton_steps);
    if r.centering_steps > 0 {
        let _ = writeln!(out, "centering steps: {}", r.centering_steps);
    }
    if let Some(msg) = &r.message {
        let _ = writeln!(out, "message:         {msg}");
    }
    out
}

pub fn trace_csv(report: &SolveReport) -> String {
    let mut out = String::from("iter,mu,d_inf,gap\n");
    for (i, t) in report.trace.iter().enumerate() {
        let _ = writeln!(out, "{},{:e},{:e},{:e}", i + 1, t.mu, t.d_inf, t.gap);
    }
    out
}
