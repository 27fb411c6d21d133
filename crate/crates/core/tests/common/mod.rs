#![allow(dead_code)]

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, Mutex};

use optbench_core::problem::{by_name, ObjectiveProblem};
use optbench_core::OptimizationResult;

/// Wraps a benchmark so every objective call is counted.
pub fn counted(name: &str, dim: usize) -> (ObjectiveProblem<f64>, Arc<AtomicUsize>) {
    let inner = by_name::<f64>(name, dim).unwrap();
    let counter = Arc::new(AtomicUsize::new(0));
    let c = counter.clone();
    let f = inner.clone();
    let problem = ObjectiveProblem::new(name, inner.space().clone(), move |x: &[f64]| {
        c.fetch_add(1, Ordering::Relaxed);
        f.evaluate(x).unwrap()
    });
    (problem, counter)
}

pub type PointLog = Arc<Mutex<Vec<Vec<f64>>>>;

/// Wraps a benchmark so every evaluated point is recorded in call order.
pub fn recorded(name: &str, dim: usize) -> (ObjectiveProblem<f64>, PointLog) {
    let inner = by_name::<f64>(name, dim).unwrap();
    let log = Arc::new(Mutex::new(Vec::new()));
    let l = log.clone();
    let f = inner.clone();
    let problem = ObjectiveProblem::new(name, inner.space().clone(), move |x: &[f64]| {
        l.lock().unwrap().push(x.to_vec());
        f.evaluate(x).unwrap()
    });
    (problem, log)
}

fn bits(v: &[f64]) -> Vec<u64> {
    v.iter().map(|x| x.to_bits()).collect()
}

/// Bit-level equality of two run results.
pub fn bit_identical(a: &OptimizationResult, b: &OptimizationResult) -> bool {
    a.algorithm == b.algorithm
        && a.evaluations == b.evaluations
        && a.generations == b.generations
        && a.best_fitness.to_bits() == b.best_fitness.to_bits()
        && bits(&a.best_point) == bits(&b.best_point)
        && a.trace.len() == b.trace.len()
        && a.trace.iter().zip(&b.trace).all(|(x, y)| {
            x.generation == y.generation
                && x.evaluations == y.evaluations
                && x.best_fitness.to_bits() == y.best_fitness.to_bits()
                && x.diversity.map(f64::to_bits) == y.diversity.map(f64::to_bits)
        })
}

pub fn sample_moments(xs: &[f64]) -> (f64, f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let m2 = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / n;
    let m4 = xs.iter().map(|x| (x - mean).powi(4)).sum::<f64>() / n;
    (mean, m2, m4 / (m2 * m2) - 3.0)
}
