use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use logqp::instances::{generate_checked, write_qp, GeneratorSpec};
use logqp::{AlgorithmKind, AlgorithmRegistry, SolverConfig};
use logqp_cli::bench::{self, BenchConfig};
use logqp_cli::solve::{self, Mu0, SolveOptions, V0};

#[derive(Parser)]
#[command(name = "logqp", version, about = "Log-domain interior-point solver for convex QPs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve a QP stored as JSON.
    Solve(SolveArgs),
    /// Mean iteration counts of several algorithms on random instances.
    Bench(BenchArgs),
    /// Write a random instance to a JSON file.
    Generate(GenerateArgs),
}

#[derive(Args)]
struct SolverArgs {
    /// Target barrier parameter.
    #[arg(long, default_value_t = 1e-3)]
    mu_f: f64,
    /// Step-size parameter β ∈ [0.5, 1).
    #[arg(long, default_value_t = 0.5)]
    beta: f64,
    /// Cap on main-loop Newton steps.
    #[arg(long, default_value_t = 10_000)]
    max_steps: usize,
}

impl SolverArgs {
    fn config(&self) -> Result<SolverConfig> {
        let cfg = SolverConfig {
            beta: self.beta,
            mu_f: self.mu_f,
            max_newton_steps: self.max_steps,
            ..SolverConfig::default()
        };
        cfg.check()?;
        Ok(cfg)
    }
}

#[derive(Args)]
struct SolveArgs {
    /// Instance file (`{"W": .., "c": .., "A": .., "b": ..}`).
    #[arg(long, short)]
    input: PathBuf,
    #[arg(long, short, default_value = "longstep")]
    algorithm: AlgorithmKind,
    /// Starting μ: `ls` for the least-squares choice at `v0`, or a number.
    #[arg(long, default_value = "ls")]
    mu0: Mu0,
    /// Starting `v`: `zero` or a JSON file holding an array of m floats.
    #[arg(long, default_value = "zero")]
    v0: V0,
    /// Write the per-iteration trace as CSV.
    #[arg(long)]
    trace: Option<PathBuf>,
    /// Print the full result as JSON.
    #[arg(long)]
    json: bool,
    /// Short-step proximity parameter θ.
    #[arg(long, default_value_t = 0.5)]
    theta: f64,
    /// Short-step tolerance ε.
    #[arg(long, default_value_t = 0.25)]
    epsilon: f64,
    #[command(flatten)]
    solver: SolverArgs,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Md,
}

#[derive(Args)]
struct BenchArgs {
    /// Number of variables.
    #[arg(long, default_value_t = 100)]
    n: usize,
    /// Constraint counts (comma separated).
    #[arg(long, value_delimiter = ',', default_value = "200")]
    m: Vec<usize>,
    /// Ranks of W (comma separated); every (m, rank) pair is run.
    #[arg(long, value_delimiter = ',', default_value = "0,50,100")]
    rank: Vec<usize>,
    /// Instances per row.
    #[arg(long, default_value_t = 30)]
    instances: usize,
    /// Seed of the first instance; instance i uses seed + i.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Algorithms to compare (comma separated).
    #[arg(long, value_delimiter = ',', default_value = "longstep,dual-barrier,primal-barrier")]
    algos: Vec<String>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Write the table here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Save every generated instance as JSON in this directory.
    #[arg(long)]
    dump_instances: Option<PathBuf>,
    #[command(flatten)]
    solver: SolverArgs,
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    m: usize,
    #[arg(long, default_value_t = 0)]
    rank: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, short)]
    out: PathBuf,
}

fn run_solve(args: SolveArgs) -> Result<i32> {
    let opts = SolveOptions {
        input: args.input,
        algorithm: args.algorithm,
        mu0: args.mu0,
        v0: args.v0,
        solver: args.solver.config()?,
        theta: args.theta,
        epsilon: args.epsilon,
    };
    let outcome = solve::run_solve(&opts)?;
    if let Some(path) = &args.trace {
        fs::write(path, solve::trace_csv(&outcome.report))
            .with_context(|| format!("writing {}", path.display()))?;
    }
    if args.json {
        println!("{}", solve::report_json(&outcome, opts.algorithm));
    } else {
        print!("{}", solve::report_text(&outcome, opts.algorithm));
    }
    Ok(outcome.exit_code())
}

fn run_bench(args: BenchArgs) -> Result<i32> {
    let rows = args
        .m
        .iter()
        .flat_map(|&m| args.rank.iter().map(move |&r| (m, r)))
        .collect();
    let cfg = BenchConfig {
        n: args.n,
        rows,
        instances: args.instances,
        seed: args.seed,
        algos: args.algos,
        solver: args.solver.config()?,
        dump_instances: args.dump_instances,
    };
    let results = bench::run_bench(&cfg, &AlgorithmRegistry::builtin())?;
    let table = match args.format {
        Format::Csv => bench::to_csv(&results),
        Format::Md => bench::to_markdown(&results),
    };
    match &args.out {
        Some(path) => fs::write(path, table).with_context(|| format!("writing {}", path.display()))?,
        None => print!("{table}"),
    }
    Ok(0)
}

fn run_generate(args: GenerateArgs) -> Result<i32> {
    let spec = GeneratorSpec::new(args.n, args.m, args.rank, args.seed);
    let generated = generate_checked(&spec, |qp| qp.validate().is_ok())?;
    write_qp(&generated.qp, &args.out)?;
    if generated.seed != args.seed {
        eprintln!("note: seed {} was rejected, used {}", args.seed, generated.seed);
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Solve(args) => run_solve(args),
        Command::Bench(args) => run_bench(args),
        Command::Generate(args) => run_generate(args),
    };
    match result {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
