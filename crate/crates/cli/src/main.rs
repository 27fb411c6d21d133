use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use optbench_core::harness::{
    import_csv, run_experiment, summarize_with_tolerance, AlgorithmSpec, ExperimentSpec, ProblemSpec, SeedPlan,
    SummaryStats, ALGORITHM_NAMES, DEFAULT_SUCCESS_TOLERANCE,
};
use optbench_core::problem::{by_name, PROBLEM_NAMES};
use serde::Deserialize;

#[derive(Parser)]
#[command(name = "optbench", version, about = "Benchmark GEWA against standard metaheuristics")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
#[allow(clippy::large_enum_variant)]
enum Command {
    /// Run every algorithm on every problem for a set of seeds.
    Run(RunArgs),
    /// Print per-cell statistics for a records CSV.
    Summarize {
        records: PathBuf,
        /// Success means final best within this distance of the known optimum.
        #[arg(long, default_value_t = DEFAULT_SUCCESS_TOLERANCE)]
        tolerance: f64,
    },
    /// List registered algorithms and problems.
    List,
}

#[derive(Args, Default)]
struct RunArgs {
    /// TOML experiment file; command-line flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Algorithm name (repeatable).
    #[arg(long = "algo")]
    algorithms: Vec<String>,
    /// Problem as name:dim (repeatable).
    #[arg(long = "problem")]
    problems: Vec<String>,
    /// Objective evaluations per run.
    #[arg(long)]
    budget: Option<usize>,
    /// Runs per (algorithm, problem) cell.
    #[arg(long)]
    runs: Option<usize>,
    /// Base seed for per-run child seeds.
    #[arg(long)]
    seed: Option<u64>,
    /// GEWA randomization parameter.
    #[arg(long)]
    alpha: Option<f64>,
    /// Population size for gewa, pso, hs and de.
    #[arg(long)]
    pop: Option<usize>,
    /// Step size as a fraction of the variable range (gewa, sa).
    #[arg(long)]
    step_ratio: Option<f64>,
    /// Any algorithm parameter, written algo.key=value (repeatable).
    #[arg(long = "param", value_name = "ALGO.KEY=VALUE")]
    params: Vec<String>,
    /// Output directory for records.csv, records.trace.csv and results.json.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads [default: available cores].
    #[arg(long)]
    workers: Option<usize>,
    /// Keep every k-th trace row.
    #[arg(long)]
    trace_stride: Option<usize>,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    #[serde(default)]
    algorithms: Vec<String>,
    #[serde(default)]
    problems: Vec<String>,
    budget: Option<usize>,
    runs: Option<usize>,
    seed: Option<u64>,
    /// Explicit seeds shared by every cell; excludes `runs` and `seed`.
    seeds: Option<Vec<u64>>,
    out: Option<PathBuf>,
    workers: Option<usize>,
    trace_stride: Option<usize>,
    #[serde(default)]
    params: BTreeMap<String, BTreeMap<String, f64>>,
}

fn main() -> ExitCode {
    match dispatch(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn dispatch(cli: Cli) -> anyhow::Result<()> {
    match cli.command {
        Command::Run(args) => run(args),
        Command::Summarize { records, tolerance } => {
            let records = import_csv(&records)?;
            print_summary(&summarize_with_tolerance(&records, tolerance)?);
            Ok(())
        }
        Command::List => {
            println!("algorithms:");
            for name in ALGORITHM_NAMES {
                println!("  {name}");
            }
            println!("problems:");
            for name in PROBLEM_NAMES {
                let space = by_name::<f64>(name, 1)?.space().clone();
                println!("  {name:<12} [{}, {}]^dim", space.lower()[0], space.upper()[0]);
            }
            Ok(())
        }
    }
}

fn load_config(path: &Path) -> anyhow::Result<ConfigFile> {
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    toml::from_str(&text).with_context(|| format!("invalid config {}", path.display()))
}

fn parse_param(raw: &str) -> anyhow::Result<(String, String, f64)> {
    let parse = || {
        let (lhs, value) = raw.split_once('=')?;
        let (algo, key) = lhs.split_once('.')?;
        Some((algo.trim().to_string(), key.trim().to_string(), value.trim().parse().ok()?))
    };
    parse().with_context(|| format!("--param `{raw}` must look like algo.key=value"))
}

fn build_spec(args: RunArgs) -> anyhow::Result<ExperimentSpec> {
    let file = match &args.config {
        Some(path) => load_config(path)?,
        None => ConfigFile::default(),
    };
    let defaults = ExperimentSpec::default();

    let names = if args.algorithms.is_empty() { file.algorithms } else { args.algorithms };
    let mut params = file.params;
    for raw in &args.params {
        let (algo, key, value) = parse_param(raw)?;
        params.entry(algo).or_default().insert(key, value);
    }
    if let Some(unused) = params.keys().find(|a| !names.contains(a)) {
        bail!("parameters given for `{unused}`, which is not in the algorithm list");
    }
    let algorithms = names
        .iter()
        .map(|name| {
            let mut spec = AlgorithmSpec::new(name.as_str());
            spec.params = params.get(name).cloned().unwrap_or_default();
            let takes_pop = matches!(name.as_str(), "gewa" | "pso" | "hs" | "de");
            let takes_step = matches!(name.as_str(), "gewa" | "sa");
            if let (Some(alpha), "gewa") = (args.alpha, name.as_str()) {
                spec = spec.with("alpha", alpha);
            }
            if let (Some(pop), true) = (args.pop, takes_pop) {
                spec = spec.with("pop", pop as f64);
            }
            if let (Some(ratio), true) = (args.step_ratio, takes_step) {
                spec = spec.with("step_ratio", ratio);
            }
            spec
        })
        .collect();

    let problems = if args.problems.is_empty() { file.problems } else { args.problems };
    let problems = problems.iter().map(|p| p.parse::<ProblemSpec>()).collect::<Result<Vec<_>, _>>()?;

    let seeds = match (file.seeds, args.runs.or(file.runs), args.seed.or(file.seed)) {
        (Some(list), None, None) => SeedPlan::Explicit(list),
        (Some(_), _, _) => bail!("an explicit seed list cannot be combined with runs or seed"),
        (None, runs, seed) => {
            let SeedPlan::Derived { base_seed, runs: default_runs } = defaults.seeds else { unreachable!() };
            SeedPlan::Derived { base_seed: seed.unwrap_or(base_seed), runs: runs.unwrap_or(default_runs) }
        }
    };
    let workers =
        args.workers.or(file.workers).unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));

    Ok(ExperimentSpec {
        algorithms,
        problems,
        seeds,
        evaluation_budget: args.budget.or(file.budget).unwrap_or(defaults.evaluation_budget),
        output_path: args.out.or(file.out),
        trace_stride: args.trace_stride.or(file.trace_stride).unwrap_or(defaults.trace_stride),
        workers,
    })
}

fn run(args: RunArgs) -> anyhow::Result<()> {
    let spec = build_spec(args)?;
    let records = run_experiment(&spec)?;
    print_summary(&summarize_with_tolerance(&records, DEFAULT_SUCCESS_TOLERANCE)?);
    if let Some(dir) = &spec.output_path {
        println!("wrote {} records to {}", records.len(), dir.display());
    }
    Ok(())
}

fn print_summary(summary: &SummaryStats) {
    println!(
        "{:<8} {:<12} {:>4} {:>5} {:>12} {:>12} {:>12} {:>12} {:>12} {:>8}",
        "algo", "problem", "dim", "runs", "min", "median", "mean", "std", "max", "success"
    );
    for c in &summary.cells {
        let success = c.success_rate.map_or_else(|| "-".to_string(), |r| format!("{r:.2}"));
        println!(
            "{:<8} {:<12} {:>4} {:>5} {:>12.4e} {:>12.4e} {:>12.4e} {:>12.4e} {:>12.4e} {:>8}",
            c.algorithm, c.problem, c.dim, c.runs, c.min, c.median, c.mean, c.std, c.max, success
        );
    }
}
