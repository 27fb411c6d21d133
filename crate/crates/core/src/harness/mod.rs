//! Experiment harness: algorithm registry, factorial experiment runner,
//! summary statistics, diversity instrumentation and CSV/JSON export.

mod diversity;
pub mod experiment;
pub mod export;
pub mod registry;
pub mod stats;

pub use diversity::diversity;
pub use experiment::{child_seed, run_experiment, ExperimentSpec, ProblemSpec, RunRecord, SeedPlan, TracePoint};
pub use export::{export_csv, export_json, import_csv, import_json, trace_path, ExperimentReport};
pub use registry::{Algorithm, AlgorithmSpec, ALGORITHM_NAMES};
pub use stats::{summarize, summarize_with_tolerance, CellSummary, SummaryStats, DEFAULT_SUCCESS_TOLERANCE};
