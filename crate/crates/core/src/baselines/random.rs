//! Pure random search: independent uniform samples of the box.

use crate::error::{Error, Result};
use crate::problem::ObjectiveProblem;
use crate::result::{BestSoFar, OptimizationResult, TraceEntry};
use crate::scalar::Scalar;
use crate::walks::{uniform_sample, RandomSource, RandomStream};

pub fn random_search_run<T: Scalar>(
    budget: usize,
    problem: &ObjectiveProblem<T>,
    seed: u64,
) -> Result<OptimizationResult<T>> {
    random_search_with(budget, problem, &mut RandomSource::new(seed))
}

pub fn random_search_with<T: Scalar, R: RandomStream + ?Sized>(
    budget: usize,
    problem: &ObjectiveProblem<T>,
    rng: &mut R,
) -> Result<OptimizationResult<T>> {
    if budget == 0 {
        return Err(Error::config("random search budget must be at least 1"));
    }
    let space = problem.space();
    let x = uniform_sample(space, rng);
    let f = problem.fitness(&x)?;
    let mut best = BestSoFar::new(x, f);
    let mut trace = Vec::with_capacity(budget);
    trace.push(TraceEntry { generation: 0, evaluations: 1, best_fitness: best.fitness, diversity: None });
    for k in 1..budget {
        let x = uniform_sample(space, rng);
        let f = problem.fitness(&x)?;
        best.offer(&x, f);
        trace.push(TraceEntry { generation: k, evaluations: k + 1, best_fitness: best.fitness, diversity: None });
    }
    Ok(OptimizationResult {
        algorithm: "random".to_string(),
        best_point: best.point,
        best_fitness: best.fitness,
        evaluations: budget,
        generations: budget - 1,
        trace,
    })
}
