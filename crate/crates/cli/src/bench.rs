//! Iteration-count benchmark on random instances.
//!
//! Every algorithm in a row sees the same instances (same seeds), starts at
//! `v0 = 0` and uses the least-squares μ at `v0` as `μ0`.

use std::fmt::Write as _;
use std::path::PathBuf;

use anyhow::{Context, Result};
use logqp::instances::{generate_checked, write_qp, GeneratorSpec};
use logqp::{initial_mu, AlgorithmRegistry, QpInstance, SolveReport, SolverConfig};
use nalgebra::DVector;
use rayon::prelude::*;

/// Environment variable capping the worker threads of a sweep.
pub const THREADS_ENV: &str = "LOGQP_THREADS";

pub const CSV_HEADER: &str = "n,m,rank_w,algo,mean_iters,failures,instances,seed";

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub n: usize,
    /// `(m, rank W)` pairs, run in order.
    pub rows: Vec<(usize, usize)>,
    pub instances: usize,
    pub seed: u64,
    pub algos: Vec<String>,
    pub solver: SolverConfig,
    pub dump_instances: Option<PathBuf>,
}

impl BenchConfig {
    pub fn default_algos() -> Vec<String> {
        ["longstep", "dual-barrier", "primal-barrier"]
            .map(String::from)
            .to_vec()
    }
}

/// Outcome of one algorithm on one instance.
#[derive(Debug, Clone)]
pub enum RunOutcome {
    Finished(Box<SolveReport>),
    Error(String),
}

impl RunOutcome {
    pub fn solved(&self) -> Option<&SolveReport> {
        match self {
            RunOutcome::Finished(r) if r.is_solved() => Some(r.as_ref()),
            _ => None,
        }
    }
}

/// All algorithms on one generated instance.
#[derive(Debug, Clone)]
pub struct InstanceRun {
    pub seed: u64,
    pub mu0: f64,
    pub qp: Option<QpInstance>,
    pub outcomes: Vec<(String, RunOutcome)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub n: usize,
    pub m: usize,
    pub rank_w: usize,
    pub algo: String,
    /// Mean Newton steps over solved runs (NaN if none solved).
    pub mean_iterations: f64,
    pub failures: usize,
    /// Solved runs contributing to the mean.
    pub instances: usize,
    pub seed_base: u64,
}

/// Generate the instance for `spec` and run every algorithm on it.
pub fn run_instance(
    spec: &GeneratorSpec,
    algos: &[String],
    registry: &AlgorithmRegistry,
    cfg: &SolverConfig,
    keep_qp: bool,
) -> InstanceRun {
    let generated = match generate_checked(spec, |qp| qp.validate().is_ok()) {
        Ok(g) => g,
        Err(e) => {
            let msg = format!("generation failed: {e}");
            return InstanceRun {
                seed: spec.seed,
                mu0: f64::NAN,
                qp: None,
                outcomes: algos
                    .iter()
                    .map(|a| (a.clone(), RunOutcome::Error(msg.clone())))
                    .collect(),
            };
        }
    };
    let qp = generated.qp;
    let v0 = DVector::zeros(qp.m());
    let mu0 = initial_mu(&qp, &v0).unwrap_or(1.0);
    let outcomes = algos
        .iter()
        .map(|name| {
            let outcome = registry
                .get(name)
                .and_then(|alg| alg.solve(&qp, &v0, mu0, cfg))
                .map_or_else(|e| RunOutcome::Error(e.to_string()), |r| RunOutcome::Finished(Box::new(r)));
            (name.clone(), outcome)
        })
        .collect();
    InstanceRun {
        seed: spec.seed,
        mu0,
        qp: keep_qp.then_some(qp),
        outcomes,
    }
}

fn thread_pool() -> Result<rayon::ThreadPool> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(value) = std::env::var(THREADS_ENV) {
        let threads: usize = value
            .parse()
            .with_context(|| format!("{THREADS_ENV} must be a positive integer, got `{value}`"))?;
        builder = builder.num_threads(threads.max(1));
    }
    builder.build().context("building thread pool")
}

/// Run all instances of one `(m, rank)` row; results are in seed order.
pub fn run_row(
    cfg: &BenchConfig,
    m: usize,
    rank: usize,
    registry: &AlgorithmRegistry,
    keep_qp: bool,
) -> Result<Vec<InstanceRun>> {
    for name in &cfg.algos {
        registry.get(name)?;
    }
    let pool = thread_pool()?;
    let runs: Vec<InstanceRun> = pool.install(|| {
        (0..cfg.instances)
            .into_par_iter()
            .map(|i| {
                let spec = GeneratorSpec::new(cfg.n, m, rank, cfg.seed + i as u64);
                run_instance(&spec, &cfg.algos, registry, &cfg.solver, keep_qp || cfg.dump_instances.is_some())
            })
            .collect()
    });
    if let Some(dir) = &cfg.dump_instances {
        std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        for run in &runs {
            if let Some(qp) = &run.qp {
                let path = dir.join(format!("qp_n{}_m{}_r{}_s{}.json", cfg.n, m, rank, run.seed));
                write_qp(qp, &path)?;
            }
        }
    }
    Ok(runs)
}

/// Reduce instance runs to one row per algorithm.
pub fn summarize(cfg: &BenchConfig, m: usize, rank: usize, runs: &[InstanceRun]) -> Vec<BenchRow> {
    cfg.algos
        .iter()
        .enumerate()
        .map(|(k, algo)| {
            let steps: Vec<usize> = runs
                .iter()
                .filter_map(|run| run.outcomes[k].1.solved().map(|r| r.newton_steps))
                .collect();
            let mean = if steps.is_empty() {
                f64::NAN
            } else {
                steps.iter().sum::<usize>() as f64 / steps.len() as f64
            };
            BenchRow {
                n: cfg.n,
                m,
                rank_w: rank,
                algo: algo.clone(),
                mean_iterations: mean,
                failures: runs.len() - steps.len(),
                instances: steps.len(),
                seed_base: cfg.seed,
            }
        })
        .collect()
}

pub fn run_bench(cfg: &BenchConfig, registry: &AlgorithmRegistry) -> Result<Vec<BenchRow>> {
    let mut rows = Vec::new();
    for &(m, rank) in &cfg.rows {
        let runs = run_row(cfg, m, rank, registry, false)?;
        rows.extend(summarize(cfg, m, rank, &runs));
    }
    Ok(rows)
}

pub fn to_csv(rows: &[BenchRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{:.3},{},{},{}",
            r.n, r.m, r.rank_w, r.algo, r.mean_iterations, r.failures, r.instances, r.seed_base
        );
    }
    out
}

/// One line per `(n, m, rank)` with a column per algorithm.
pub fn to_markdown(rows: &[BenchRow]) -> String {
    let mut algos: Vec<&str> = Vec::new();
    let mut keys: Vec<(usize, usize, usize)> = Vec::new();
    for r in rows {
        if !algos.contains(&r.algo.as_str()) {
            algos.push(&r.algo);
        }
        let key = (r.n, r.m, r.rank_w);
        if !keys.contains(&key) {
            keys.push(key);
        }
    }
    let mut out = String::from("| n | m | rank W |");
    for a in &algos {
        let _ = write!(out, " {a} |");
    }
    out.push_str("\n|---:|---:|---:|");
    out.push_str(&"---:|".repeat(algos.len()));
    out.push('\n');
    for (n, m, rank) in keys {
        let _ = write!(out, "| {n} | {m} | {rank} |");
        for a in &algos {
            let cell = rows
                .iter()
                .find(|r| (r.n, r.m, r.rank_w) == (n, m, rank) && r.algo == *a)
                .map(|r| {
                    if r.failures > 0 {
                        format!("{:.2} ({} failed)", r.mean_iterations, r.failures)
                    } else {
                        format!("{:.2}", r.mean_iterations)
                    }
                })
                .unwrap_or_default();
            let _ = write!(out, " {cell} |");
        }
        out.push('\n');
    }
    out
}
