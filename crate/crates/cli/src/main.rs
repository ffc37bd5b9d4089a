//! `habc`: generate instances, solve them, run benchmark sweeps and build
//! the scout-policy comparison table.
//!
//! Exit codes: 0 solved / done, 1 I/O or parse error, 2 usage error, 3 search
//! budget exhausted without a proper coloring.

use std::fs;
use std::io::{self, BufWriter, Write};
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use habc_core::harness::{
    ablation_table, aggregate, p_sweep, read_records, run_plan, write_ablation, write_aggregate,
    write_records, ExperimentPlan, RunOptions,
};
use habc_core::{
    generate, parse_dimacs, solve, write_dimacs, Family, InstanceSpec, ScoutPolicy, SolverParams,
};

#[derive(Parser, Debug)]
#[command(name = "habc", version, about = "Graph 3-coloring with a hybrid artificial bee colony")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate a hidden 3-colorable instance as DIMACS.
    Gen(GenArgs),
    /// Solve one DIMACS graph.
    Solve(SolveArgs),
    /// Run a benchmark sweep and write per-run records.
    Bench(BenchArgs),
    /// Build the random-vs-rwde comparison table from run records.
    Report(ReportArgs),
}

#[derive(Args, Debug)]
struct GenArgs {
    #[arg(long)]
    family: Family,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    p: f64,
    #[arg(long)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

/// Solver settings shared by `solve` and `bench`.
#[derive(Args, Debug)]
struct SearchArgs {
    /// Number of food sources.
    #[arg(long, default_value_t = 100)]
    np: usize,
    /// Trial count after which a source is handed to a scout.
    #[arg(long, default_value_t = 1000)]
    limit: u64,
    /// Decoder evaluations per run.
    #[arg(long, default_value_t = 300_000)]
    max_fes: u64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    lb: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    ub: f64,
    /// RWDE step length [default: 0.1 * (ub - lb)]
    #[arg(long)]
    lambda: Option<f64>,
}

impl SearchArgs {
    fn params(&self, scout_policy: ScoutPolicy, seed: u64) -> Result<SolverParams> {
        let params = SolverParams {
            np: self.np,
            limit: self.limit,
            max_fes: self.max_fes,
            lb: self.lb,
            ub: self.ub,
            lambda: self.lambda.unwrap_or(0.1 * (self.ub - self.lb)),
            scout_policy,
            seed,
        };
        params.validate().map_err(usage)?;
        Ok(params)
    }
}

#[derive(Args, Debug)]
struct SolveArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    variant: ScoutPolicy,
    #[command(flatten)]
    search: SearchArgs,
    #[arg(long)]
    seed: u64,
    /// Write the best coloring, one color per line.
    #[arg(long)]
    coloring_out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct BenchArgs {
    /// Comma-separated families.
    #[arg(long, value_delimiter = ',', required = true)]
    families: Vec<Family>,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    p_from: f64,
    #[arg(long)]
    p_to: f64,
    #[arg(long)]
    p_step: f64,
    /// Inclusive instance seed range, e.g. `1..10`.
    #[arg(long, value_parser = parse_seed_range)]
    seeds: RangeInclusive<u64>,
    /// Runs per instance and variant.
    #[arg(long)]
    runs: usize,
    /// Comma-separated scout variants.
    #[arg(long, value_delimiter = ',', required = true)]
    variants: Vec<ScoutPolicy>,
    #[command(flatten)]
    search: SearchArgs,
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    aggregate_out: Option<PathBuf>,
    /// Worker threads [default: all cores]
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    threads: Option<u64>,
    /// Write 0 for wall_time_ms, making output byte-reproducible.
    #[arg(long)]
    no_timing: bool,
}

#[derive(Args, Debug)]
struct ReportArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    out: PathBuf,
}

/// Invalid flag values found after parsing; reported with exit code 2.
#[derive(Debug)]
struct UsageError(String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn usage(e: impl std::fmt::Display) -> anyhow::Error {
    UsageError(e.to_string()).into()
}

fn parse_seed_range(s: &str) -> Result<RangeInclusive<u64>, String> {
    let (a, b) = s
        .split_once("..")
        .ok_or_else(|| format!("expected a seed range like `1..10`, got `{s}`"))?;
    let a: u64 = a.trim().parse().map_err(|_| format!("invalid seed `{a}`"))?;
    let b: u64 = b.trim().parse().map_err(|_| format!("invalid seed `{b}`"))?;
    if a > b {
        return Err(format!("empty seed range `{s}`"));
    }
    Ok(a..=b)
}

fn create(path: &Path) -> Result<BufWriter<fs::File>> {
    let file = fs::File::create(path).with_context(|| format!("cannot create {}", path.display()))?;
    Ok(BufWriter::new(file))
}

fn gen(args: GenArgs) -> Result<ExitCode> {
    let spec = InstanceSpec::new(args.n, args.family, args.p, args.seed).map_err(usage)?;
    let graph = generate(&spec).map_err(usage)?;
    fs::write(&args.out, write_dimacs(&graph))
        .with_context(|| format!("cannot write {}", args.out.display()))?;
    println!("n={} m={} family={}", graph.n(), graph.m(), args.family);
    Ok(ExitCode::SUCCESS)
}

fn solve_cmd(args: SolveArgs) -> Result<ExitCode> {
    let params = args.search.params(args.variant, args.seed)?;
    let text = fs::read_to_string(&args.graph)
        .with_context(|| format!("cannot read {}", args.graph.display()))?;
    let graph = parse_dimacs(&text).with_context(|| format!("invalid graph {}", args.graph.display()))?;

    println!("graph: n={} m={}", graph.n(), graph.m());
    println!(
        "params: variant={} np={} limit={} max-fes={} lb={} ub={} lambda={} seed={}",
        params.scout_policy,
        params.np,
        params.limit,
        params.max_fes,
        params.lb,
        params.ub,
        params.lambda,
        params.seed
    );
    let outcome = solve(&graph, &params).map_err(usage)?;
    println!("success: {}", outcome.success);
    println!("best_fitness: {}", outcome.best_fitness);
    println!("evals_used: {}", outcome.evals_used);
    match outcome.evals_to_solution {
        Some(e) => println!("evals_to_solution: {e}"),
        None => println!("evals_to_solution: -"),
    }
    if let Some(path) = &args.coloring_out {
        let mut out = create(path)?;
        write!(out, "{}", outcome.best_coloring)
            .and_then(|()| out.flush())
            .with_context(|| format!("cannot write {}", path.display()))?;
    }
    Ok(if outcome.success {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(3)
    })
}

fn bench(args: BenchArgs) -> Result<ExitCode> {
    let p_values = p_sweep(args.p_from, args.p_to, args.p_step).map_err(usage)?;
    // template only: the harness sets policy and seed per run
    let params = args.search.params(ScoutPolicy::Rwde, 0)?;
    let plan = ExperimentPlan {
        families: args.families,
        n: args.n,
        p_values,
        instance_seeds: args.seeds.collect(),
        runs_per_instance: args.runs,
        params,
        variants: args.variants,
    };
    plan.validate().map_err(usage)?;
    for &family in &plan.families {
        for &p in &plan.p_values {
            InstanceSpec::new(plan.n, family, p, 0).map_err(usage)?;
        }
    }
    eprintln!("running {} solver runs", plan.total_runs());
    let options = RunOptions {
        threads: args.threads.map(|t| t as usize),
        record_wall_time: !args.no_timing,
    };
    let records = run_plan(&plan, options)?;

    let mut out = create(&args.out)?;
    write_records(&records, &mut out)?;
    out.flush()?;
    if let Some(path) = &args.aggregate_out {
        let mut out = create(path)?;
        write_aggregate(&aggregate(&records), &mut out)?;
        out.flush()?;
    }
    let solved = records.iter().filter(|r| r.success).count();
    println!("{} runs, {solved} solved", records.len());
    Ok(ExitCode::SUCCESS)
}

fn report(args: ReportArgs) -> Result<ExitCode> {
    let file = fs::File::open(&args.input)
        .with_context(|| format!("cannot open {}", args.input.display()))?;
    let records = read_records(io::BufReader::new(file))
        .with_context(|| format!("invalid records in {}", args.input.display()))?;
    let table = ablation_table(&records)?;
    let mut out = create(&args.out)?;
    write_ablation(&table, &mut out)?;
    out.flush()?;
    for s in &table.summaries {
        let pct = s
            .improvement_pct
            .map_or_else(|| "undefined".to_string(), |x| format!("{x:.2}%"));
        println!(
            "{} n={}: random {:.3}, rwde {:.3}, improvement {pct}",
            s.family, s.n, s.avg_random, s.avg_rwde
        );
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Gen(args) => gen(args),
        Command::Solve(args) => solve_cmd(args),
        Command::Bench(args) => bench(args),
        Command::Report(args) => report(args),
    };
    match result {
        Ok(code) => code,
        Err(e) if e.is::<UsageError>() => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
