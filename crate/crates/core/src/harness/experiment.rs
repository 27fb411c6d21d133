use std::path::PathBuf;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::harness::export::{export_csv, export_json};
use crate::harness::registry::{Algorithm, AlgorithmSpec};
use crate::harness::stats::summarize;
use crate::problem::{self, ObjectiveProblem};
use crate::walks::{derive_seed, name_tag};

/// A benchmark problem by name and dimension, written `name:dim`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ProblemSpec {
    pub name: String,
    pub dim: usize,
}

impl ProblemSpec {
    pub fn new(name: impl Into<String>, dim: usize) -> Self {
        Self { name: name.into(), dim }
    }

    pub fn build(&self) -> Result<ObjectiveProblem<f64>> {
        problem::by_name(&self.name, self.dim)
    }

    fn key(&self) -> String {
        format!("{}:{}", self.name, self.dim)
    }
}

impl FromStr for ProblemSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (name, dim) =
            s.split_once(':').ok_or_else(|| Error::input(format!("problem `{s}` must be written name:dim")))?;
        let dim = dim.trim().parse().map_err(|_| Error::input(format!("bad dimension in `{s}`")))?;
        Ok(Self::new(name.trim(), dim))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SeedPlan {
    /// The same list of seeds for every cell.
    Explicit(Vec<u64>),
    /// `runs` child seeds per cell, derived from the base seed and the cell.
    Derived { base_seed: u64, runs: usize },
}

impl SeedPlan {
    pub fn runs(&self) -> usize {
        match self {
            SeedPlan::Explicit(s) => s.len(),
            SeedPlan::Derived { runs, .. } => *runs,
        }
    }

    fn seed(&self, algorithm: &str, problem: &ProblemSpec, run: usize) -> u64 {
        match self {
            SeedPlan::Explicit(s) => s[run],
            SeedPlan::Derived { base_seed, .. } => child_seed(*base_seed, algorithm, &problem.key(), run),
        }
    }
}

/// Deterministic per-cell seed from `(base_seed, algorithm, problem, run index)`.
pub fn child_seed(base_seed: u64, algorithm: &str, problem: &str, run: usize) -> u64 {
    derive_seed(base_seed, &[name_tag(algorithm), name_tag(problem), run as u64])
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentSpec {
    pub algorithms: Vec<AlgorithmSpec>,
    pub problems: Vec<ProblemSpec>,
    pub seeds: SeedPlan,
    /// Objective evaluations every run spends.
    pub evaluation_budget: usize,
    /// Directory for `records.csv`, `records.trace.csv` and `results.json`.
    pub output_path: Option<PathBuf>,
    /// Keep every k-th trace row (the final row is always kept).
    pub trace_stride: usize,
    pub workers: usize,
}

impl Default for ExperimentSpec {
    fn default() -> Self {
        Self {
            algorithms: Vec::new(),
            problems: Vec::new(),
            seeds: SeedPlan::Derived { base_seed: 42, runs: 25 },
            evaluation_budget: 20_000,
            output_path: None,
            trace_stride: 1,
            workers: 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TracePoint {
    pub evaluations_so_far: usize,
    pub best_fitness: f64,
    pub diversity: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub algorithm: String,
    pub problem: String,
    pub dim: usize,
    pub seed: u64,
    pub final_best: f64,
    pub evaluations: usize,
    /// Seconds.
    pub wall_time: f64,
    pub trace: Vec<TracePoint>,
}

impl RunRecord {
    pub(crate) fn sort_key(&self) -> (&str, &str, usize, u64) {
        (&self.algorithm, &self.problem, self.dim, self.seed)
    }
}

struct Cell<'a> {
    algorithm: &'a Algorithm,
    problem: &'a (ProblemSpec, ObjectiveProblem<f64>),
    seed: u64,
}

/// Runs every (algorithm, problem, seed) cell and returns the records sorted
/// by algorithm, problem, dimension and seed. All names and budgets are
/// resolved before any run starts. Writes the CSV and JSON outputs when
/// `output_path` is set.
pub fn run_experiment(spec: &ExperimentSpec) -> Result<Vec<RunRecord>> {
    if spec.algorithms.is_empty() || spec.problems.is_empty() {
        return Err(Error::config("experiment needs at least one algorithm and one problem"));
    }
    if spec.seeds.runs() == 0 {
        return Err(Error::config("experiment needs at least one run"));
    }
    if spec.trace_stride == 0 || spec.workers == 0 {
        return Err(Error::config("trace_stride and workers must be positive"));
    }
    let algorithms =
        spec.algorithms.iter().map(|a| Algorithm::from_spec(a, spec.evaluation_budget)).collect::<Result<Vec<_>>>()?;
    let problems = spec.problems.iter().map(|p| Ok((p.clone(), p.build()?))).collect::<Result<Vec<_>>>()?;

    let mut cells = Vec::new();
    for algorithm in &algorithms {
        for problem in &problems {
            for run in 0..spec.seeds.runs() {
                let seed = spec.seeds.seed(algorithm.name(), &problem.0, run);
                cells.push(Cell { algorithm, problem, seed });
            }
        }
    }

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(spec.workers)
        .build()
        .map_err(|e| Error::config(format!("cannot start worker pool: {e}")))?;
    let mut records =
        pool.install(|| cells.par_iter().map(|c| run_cell(c, spec.trace_stride)).collect::<Result<Vec<_>>>())?;
    records.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));

    if let Some(dir) = &spec.output_path {
        std::fs::create_dir_all(dir).map_err(|source| Error::Io { path: dir.clone(), source })?;
        export_csv(&records, &dir.join("records.csv"))?;
        export_json(&records, &summarize(&records)?, &dir.join("results.json"))?;
    }
    Ok(records)
}

fn run_cell(cell: &Cell<'_>, stride: usize) -> Result<RunRecord> {
    let (spec, problem) = cell.problem;
    let start = Instant::now();
    let result = cell.algorithm.run(problem, cell.seed)?;
    let wall_time = start.elapsed().as_secs_f64();
    let last = result.trace.len().saturating_sub(1);
    let trace = result
        .trace
        .iter()
        .enumerate()
        .filter(|(i, _)| i % stride == 0 || *i == last)
        .map(|(_, t)| TracePoint {
            evaluations_so_far: t.evaluations,
            best_fitness: t.best_fitness,
            diversity: t.diversity,
        })
        .collect();
    Ok(RunRecord {
        algorithm: cell.algorithm.name().to_string(),
        problem: spec.name.clone(),
        dim: spec.dim,
        seed: cell.seed,
        final_best: result.best_fitness,
        evaluations: result.evaluations,
        wall_time,
        trace,
    })
}
