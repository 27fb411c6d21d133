//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each and
//! exits non-zero if any criterion fails.
//!
//! Run with `cargo test -p optbench-core --test acceptance` (add `--release`
//! for speed; the runtime limits hold in both profiles).

// Oracle probes are literal inputs, not approximations of constants.
#![allow(clippy::approx_constant, clippy::excessive_precision, clippy::neg_cmp_op_on_partial_ord)]

mod common;

use std::sync::atomic::Ordering;
use std::time::{Duration, Instant};

use optbench_core::baselines::random::random_search_with;
use optbench_core::baselines::{random_search_run, PsoConfig};
use optbench_core::gewa::{self, GewaConfig, WalkerPopulation};
use optbench_core::harness::registry::Algorithm;
use optbench_core::harness::stats::median;
use optbench_core::harness::{
    child_seed, export_csv, export_json, import_csv, import_json, run_experiment, summarize, AlgorithmSpec,
    ExperimentSpec, ProblemSpec, SeedPlan, ALGORITHM_NAMES,
};
use optbench_core::problem::{by_name, PROBLEM_NAMES};
use optbench_core::walks::{gaussian_step, levy_step, uniform_sample, StepConfig};
use optbench_core::{RandomSource, ScriptedSource};

use common::{bit_identical, counted, recorded, sample_moments};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

const SEEDS_25: std::ops::RangeInclusive<u64> = 1..=25;

fn gewa_config(alpha: f64, generations: usize) -> GewaConfig<f64> {
    GewaConfig { n: 20, alpha, step_ratio: 0.01, max_generations: generations, ..GewaConfig::default() }
}

fn gewa_median(problem: &str, alpha: f64, generations: usize) -> f64 {
    let p = by_name::<f64>(problem, 5).unwrap();
    let finals: Vec<f64> =
        SEEDS_25.map(|s| gewa::run(&gewa_config(alpha, generations), &p, s).unwrap().best_fitness).collect();
    median(&finals).unwrap()
}

/// 1. Universal run contracts over every algorithm, suite problem, dim ∈ {2, 5} and 10 seeds.
fn universal_contracts() -> Outcome {
    let start = Instant::now();
    let budget = 2_000;
    let mut runs = 0;
    for name in ALGORITHM_NAMES {
        let algorithm = Algorithm::from_spec(&AlgorithmSpec::new(name), budget).map_err(|e| e.to_string())?;
        for problem in PROBLEM_NAMES {
            for dim in [2, 5] {
                let (p, calls) = counted(problem, dim);
                for seed in 0..10u64 {
                    calls.store(0, Ordering::Relaxed);
                    let a = algorithm.run(&p, seed).map_err(|e| e.to_string())?;
                    let cell = format!("{name}/{problem}:{dim}/seed {seed}");
                    ensure!(a.is_trace_monotone(), "{cell}: trace not monotone");
                    ensure!(p.space().contains(&a.best_point), "{cell}: best point outside bounds");
                    ensure!(
                        calls.load(Ordering::Relaxed) == a.evaluations,
                        "{cell}: objective called {} times, reported {}",
                        calls.load(Ordering::Relaxed),
                        a.evaluations
                    );
                    ensure!(a.evaluations == budget, "{cell}: spent {} of {budget}", a.evaluations);
                    ensure!(
                        a.trace.last().map(|t| t.evaluations) == Some(budget),
                        "{cell}: trace does not end at the budget"
                    );
                    ensure!(
                        a.trace.last().map(|t| t.best_fitness.to_bits()) == Some(a.best_fitness.to_bits()),
                        "{cell}: trace end differs from result"
                    );
                    ensure!(
                        p.evaluate(&a.best_point).unwrap().to_bits() == a.best_fitness.to_bits(),
                        "{cell}: best fitness does not match best point"
                    );
                    let b = algorithm.run(&p, seed).map_err(|e| e.to_string())?;
                    ensure!(bit_identical(&a, &b), "{cell}: rerun differs");
                    runs += 1;
                }
            }
        }
    }
    let elapsed = start.elapsed();
    ensure!(elapsed < Duration::from_secs(120), "took {elapsed:?}");
    Ok(format!("{runs} runs checked twice in {:.1}s", elapsed.as_secs_f64()))
}

/// 2. Structural fidelity: frozen local walks, α = 0 replay, elitism.
fn gewa_structure() -> Outcome {
    for problem in PROBLEM_NAMES {
        let p = by_name::<f64>(problem, 3).unwrap();
        let config = GewaConfig { alpha: 1.0, max_generations: 300, ..GewaConfig::default() };
        let mut rng = ScriptedSource::new(11).constant_gaussian(0.0);
        let r = gewa::run_with(&config, &p, &mut rng).unwrap();
        let first = r.trace[0].best_fitness;
        ensure!(
            r.trace.iter().all(|t| t.best_fitness.to_bits() == first.to_bits()),
            "{problem}: best moved with zero steps"
        );
    }

    for (problem, seed) in [("sphere", 3u64), ("ackley", 8), ("rosenbrock", 21)] {
        let (p, log) = recorded(problem, 4);
        let config = GewaConfig { alpha: 0.0, max_generations: 400, replace_count: 2, ..GewaConfig::default() };
        let r = gewa::run(&config, &p, seed).unwrap();
        let points = log.lock().unwrap().clone();
        let mut replay = RandomSource::new(seed);
        ensure!(points.len() == r.evaluations, "{problem}: recorded {} points", points.len());
        for (k, x) in points.iter().enumerate() {
            let y = uniform_sample(p.space(), &mut replay);
            ensure!(
                x.iter().zip(&y).all(|(a, b)| a.to_bits() == b.to_bits()),
                "{problem}: proposal {k} differs from uniform replay"
            );
        }
        let plain = by_name::<f64>(problem, 4).unwrap();
        let rs = random_search_with(r.evaluations, &plain, &mut RandomSource::new(seed)).unwrap();
        ensure!(
            rs.best_fitness.to_bits() == r.best_fitness.to_bits(),
            "{problem}: α = 0 best differs from random search"
        );
    }

    for (problem, alpha, m) in [("rastrigin", 0.5, 1), ("griewank", 0.3, 4), ("sphere", 0.9, 7)] {
        let p = by_name::<f64>(problem, 5).unwrap();
        let config = GewaConfig { n: 15, alpha, replace_count: m, ..GewaConfig::default() };
        let mut rng = RandomSource::new(99);
        let mut pop: WalkerPopulation<f64> = gewa::initialize(&config, &p, &mut rng).unwrap();
        for generation in 0..500 {
            let best = pop.best_index();
            let point = pop.positions()[best].clone();
            let fitness = pop.best_fitness();
            gewa::step_generation(&mut pop, &config, &p, &mut rng).unwrap();
            ensure!(pop.positions()[best] == point, "{problem}: best walker replaced in generation {generation}");
            ensure!(pop.best_fitness() <= fitness, "{problem}: best worsened");
            ensure!(pop.len() == 15, "{problem}: population size changed");
        }
    }
    Ok("zero-step α=1, α=0 replay and elitism hold exactly".into())
}

/// 3. GEWA beats random search at a common budget of 20 000 evaluations.
fn gewa_beats_random() -> Outcome {
    let start = Instant::now();
    let mut lines = Vec::new();
    for problem in ["sphere", "rastrigin"] {
        let g = gewa_median(problem, 0.5, 19_980);
        let p = by_name::<f64>(problem, 5).unwrap();
        let finals: Vec<f64> = SEEDS_25.map(|s| random_search_run(20_000, &p, s).unwrap().best_fitness).collect();
        let r = median(&finals).unwrap();
        ensure!(g < r, "{problem}: GEWA median {g:e} not below random {r:e}");
        lines.push(format!("{problem}: {g:.3e} < {r:.3e}"));
    }
    let elapsed = start.elapsed();
    ensure!(elapsed < Duration::from_secs(60), "took {elapsed:?}");
    Ok(lines.join("; "))
}

/// 4. α = 0.5 beats both α = 0 and α = 1 on sphere:5 at 20 000 evaluations.
fn alpha_ordering() -> Outcome {
    let mid = gewa_median("sphere", 0.5, 19_980);
    let global = gewa_median("sphere", 0.0, 19_980);
    let local = gewa_median("sphere", 1.0, 19_980);
    let summary = format!("α=0.5 {mid:.3e}, α=0 {global:.3e}, α=1 {local:.3e}");
    let context = || {
        let r = |alpha| gewa_median("rastrigin", alpha, 19_980);
        format!("(rastrigin:5 for reference: α=0.5 {:.3e}, α=0 {:.3e}, α=1 {:.3e})", r(0.5), r(0.0), r(1.0))
    };
    ensure!(mid < global, "{summary}: α=0.5 not below α=0 {}", context());
    ensure!(mid < local, "{summary}: α=0.5 not below α=1 {}", context());
    Ok(summary)
}

/// 5. Gaussian moments and Lévy heavy tails at 10⁶ draws.
fn kernel_statistics() -> Outcome {
    let n = 1_000_000;
    let d = 1.0;
    let gauss_cfg = StepConfig::gaussian(vec![d]).unwrap();
    let mut rng = RandomSource::new(2024);
    let gauss: Vec<f64> = (0..n).map(|_| gaussian_step(&gauss_cfg, &mut rng)[0]).collect();
    let (mean, var, gauss_kurt) = sample_moments(&gauss);
    ensure!(mean.abs() <= 0.005, "Gaussian mean {mean}");
    ensure!((var - d * d).abs() <= 0.02 * d * d, "Gaussian variance {var}");

    let levy_cfg = StepConfig::gaussian(vec![d]).unwrap().with_levy_beta(1.5).unwrap();
    let mut rng = RandomSource::new(2024);
    let levy: Vec<f64> = (0..n).map(|_| levy_step(&levy_cfg, &mut rng)[0]).collect();
    let (_, _, levy_kurt) = sample_moments(&levy);
    ensure!(levy_kurt > gauss_kurt, "Lévy kurtosis {levy_kurt} not above Gaussian {gauss_kurt}");
    let tail = |xs: &[f64]| xs.iter().filter(|x| x.abs() > 10.0 * d).count() as f64 / xs.len() as f64;
    let (lt, gt) = (tail(&levy), tail(&gauss));
    ensure!(lt > gt, "Lévy tail mass {lt} not above Gaussian {gt}");
    Ok(format!(
        "mean {mean:.2e}, var {var:.4}, kurtosis Lévy {levy_kurt:.1} vs Gaussian {gauss_kurt:.3}, tail {lt:.4} vs {gt}"
    ))
}

/// 6. Convergence against the pinned calibration thresholds.
fn convergence_calibration() -> Outcome {
    let calibration: toml::Table = include_str!("../calibration.toml").parse().map_err(|e| format!("{e}"))?;
    let value = |section: &str, key: &str| -> f64 {
        let v = &calibration[section][key];
        v.as_float().or_else(|| v.as_integer().map(|i| i as f64)).unwrap()
    };

    let threshold = value("gewa_sphere5", "threshold");
    ensure!(
        (threshold - 10.0 * value("gewa_sphere5", "reference_median")).abs() <= 1e-12 * threshold,
        "threshold is not 10× reference"
    );
    let g = gewa_median("sphere", value("gewa_sphere5", "alpha"), value("gewa_sphere5", "generations") as usize);
    ensure!(g < threshold, "GEWA median {g:e} not below {threshold:e}");

    let pso = PsoConfig {
        swarm_size: value("pso_sphere5", "swarm_size") as usize,
        inertia: value("pso_sphere5", "inertia"),
        cognitive: value("pso_sphere5", "cognitive"),
        social: value("pso_sphere5", "social"),
        max_generations: value("pso_sphere5", "generations") as usize,
        ..PsoConfig::default()
    };
    let p = by_name::<f64>("sphere", 5).unwrap();
    let pso_threshold = value("pso_sphere5", "threshold");
    let finals: Vec<f64> =
        SEEDS_25.map(|s| optbench_core::baselines::pso_run(&pso, &p, s).unwrap().best_fitness).collect();
    let pm = median(&finals).unwrap();
    ensure!(pm < pso_threshold, "PSO median {pm:e} not below {pso_threshold:e}");
    Ok(format!("GEWA {g:.3e} < {threshold:.3e}; PSO {pm:.3e} < {pso_threshold:.3e}"))
}

/// 7. Benchmark values against an independently computed 50-digit table.
fn oracle_spot_checks() -> Outcome {
    let probes: [&[f64]; 5] =
        [&[1.0, 2.0], &[-0.5, 0.25, 3.0], &[3.14159, -2.71828], &[0.1, 0.2, 0.3, 0.4, 0.5], &[-4.0, 4.5]];
    let table: [(&str, [f64; 5]); 5] = [
        ("sphere", [5.0, 9.3125, 17.258633886499999423, 0.55000000000000001665, 36.25]),
        ("rosenbrock", [100.0, 865.703125, 15850.02780174224377, 33.840000000000000114, 13250.0]),
        ("rastrigin", [5.0, 39.3125, 32.941545322687473415, 60.550000000000001042, 56.25]),
        (
            "ackley",
            [
                5.4221317177995079605,
                7.6579235942117654456,
                10.363218759124067568,
                3.1831579464839297844,
                13.182534138149893603,
            ],
        ),
        (
            "griewank",
            [
                0.9169932621326708227,
                1.141033882995010848,
                0.66017915514744464244,
                0.072823830740721409114,
                0.35595191167154061646,
            ],
        ),
    ];
    let mut checked = 0;
    for (name, expected) in table {
        for dim in [1, 2, 3, 5, 10] {
            let p = by_name::<f64>(name, dim).unwrap();
            let opt = p.known_optimum().unwrap();
            let v = p.evaluate(&opt.point).unwrap();
            ensure!((v - opt.value).abs() <= 1e-9, "{name}:{dim} at optimum gives {v}");
            checked += 1;
        }
        for (x, want) in probes.iter().zip(expected) {
            let got = by_name::<f64>(name, x.len()).unwrap().evaluate(x).unwrap();
            ensure!((got - want).abs() <= 1e-9, "{name}{x:?}: {got} vs oracle {want}");
            checked += 1;
        }
    }
    Ok(format!("{checked} values within 1e-9"))
}

/// 8. Harness cardinality, export round trips and seed derivation.
fn harness_integrity() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let spec = ExperimentSpec {
        algorithms: vec![AlgorithmSpec::new("gewa"), AlgorithmSpec::new("pso")],
        problems: vec![ProblemSpec::new("sphere", 3), ProblemSpec::new("rastrigin", 3)],
        seeds: SeedPlan::Derived { base_seed: 42, runs: 5 },
        evaluation_budget: 1_000,
        output_path: Some(dir.path().to_path_buf()),
        trace_stride: 10,
        workers: 4,
    };
    let records = run_experiment(&spec).map_err(|e| e.to_string())?;
    ensure!(records.len() == 20, "{} records", records.len());
    for r in records.iter().filter(|r| r.algorithm == "gewa") {
        ensure!(r.evaluations == 20 + (1_000 - 20), "GEWA budget identity");
    }

    let again =
        run_experiment(&ExperimentSpec { output_path: None, workers: 1, ..spec.clone() }).map_err(|e| e.to_string())?;
    let strip = |rs: &[optbench_core::harness::RunRecord]| {
        rs.iter()
            .cloned()
            .map(|mut r| {
                r.wall_time = 0.0;
                r
            })
            .collect::<Vec<_>>()
    };
    ensure!(strip(&records) == strip(&again), "rerun differs beyond wall time");

    let csv_path = dir.path().join("records.csv");
    let lines = std::fs::read_to_string(&csv_path).map_err(|e| e.to_string())?.lines().count();
    ensure!(lines == 21, "records.csv has {lines} lines");
    let back = import_csv(&csv_path).map_err(|e| e.to_string())?;
    ensure!(format!("{back:?}") == format!("{records:?}"), "CSV round trip differs");
    ensure!(records_bits(&back) == records_bits(&records), "CSV round trip not bit-exact");

    let report = import_json(&dir.path().join("results.json")).map_err(|e| e.to_string())?;
    ensure!(records_bits(&report.records) == records_bits(&records), "JSON round trip not bit-exact");
    ensure!(report.summary == summarize(&records).unwrap(), "JSON summary differs");
    ensure!(summarize(&report.records).unwrap() == report.summary, "summary does not survive the round trip");

    let extra = dir.path().join("again.csv");
    export_csv(&back, &extra).map_err(|e| e.to_string())?;
    export_json(&back, &report.summary, &dir.path().join("again.json")).map_err(|e| e.to_string())?;

    let mut seen = std::collections::HashSet::new();
    for a in 0..10 {
        for p in 0..10 {
            for run in 0..100 {
                ensure!(
                    seen.insert(child_seed(42, &format!("algorithm{a}"), &format!("problem{p}:5"), run)),
                    "seed collision at ({a}, {p}, {run})"
                );
            }
        }
    }
    Ok(format!("20 records, CSV/JSON bit-exact, {} distinct child seeds", seen.len()))
}

fn records_bits(records: &[optbench_core::harness::RunRecord]) -> Vec<u64> {
    records
        .iter()
        .flat_map(|r| {
            let head = [r.seed, r.dim as u64, r.evaluations as u64, r.final_best.to_bits(), r.wall_time.to_bits()];
            let trace = r.trace.iter().flat_map(|t| {
                [t.evaluations_so_far as u64, t.best_fitness.to_bits(), t.diversity.map_or(u64::MAX, f64::to_bits)]
            });
            head.into_iter().chain(trace).collect::<Vec<_>>()
        })
        .collect()
}

type Criterion = fn() -> Outcome;

fn main() {
    let criteria: [(&str, Criterion); 8] = [
        ("1 universal run contracts", universal_contracts),
        ("2 GEWA structural fidelity", gewa_structure),
        ("3 GEWA beats random search", gewa_beats_random),
        ("4 alpha guidance ordering", alpha_ordering),
        ("5 randomization kernel statistics", kernel_statistics),
        ("6 convergence calibration", convergence_calibration),
        ("7 oracle spot-checks", oracle_spot_checks),
        ("8 harness integrity", harness_integrity),
    ];
    let mut failures = 0;
    for (name, check) in criteria {
        match check() {
            Ok(detail) => println!("PASS  criterion {name}: {detail}"),
            Err(why) => {
                failures += 1;
                println!("FAIL  criterion {name}: {why}");
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures > 0 {
        std::process::exit(1);
    }
}
