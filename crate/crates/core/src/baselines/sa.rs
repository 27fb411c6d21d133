//! Simulated annealing with Gaussian random-walk moves and geometric cooling.
//!
//! A move `y = clamp(x + w)`, `w_i ~ N(0, 1) · step_ratio · (U_i − L_i)`, is
//! accepted outright when it does not worsen the objective and otherwise with
//! probability `exp(−Δ / T)`. The temperature is multiplied by
//! `cooling_rate` after every `moves_per_temp` moves. The trace has one row
//! per temperature level plus the final state.

use crate::error::{Error, Result};
use crate::problem::ObjectiveProblem;
use crate::result::{BestSoFar, OptimizationResult, TraceEntry};
use crate::scalar::Scalar;
use crate::walks::{local_walk, uniform_sample, RandomSource, RandomStream, StepConfig};

#[derive(Debug, Clone, PartialEq)]
pub struct SaConfig<T> {
    pub initial_temp: T,
    pub cooling_rate: T,
    pub moves_per_temp: usize,
    pub step_ratio: T,
    /// Total objective evaluations, including the starting point.
    pub max_evaluations: usize,
}

impl<T: Scalar> Default for SaConfig<T> {
    fn default() -> Self {
        Self {
            initial_temp: T::one(),
            cooling_rate: T::of(0.95),
            moves_per_temp: 100,
            step_ratio: T::of(0.01),
            max_evaluations: 20_000,
        }
    }
}

impl<T: Scalar> SaConfig<T> {
    pub fn validate(&self) -> Result<()> {
        if !(self.initial_temp > T::zero()) || !self.initial_temp.is_finite() {
            return Err(Error::config("initial_temp must be positive"));
        }
        if !(self.cooling_rate > T::zero() && self.cooling_rate < T::one()) {
            return Err(Error::config("cooling_rate must lie in (0, 1)"));
        }
        if self.moves_per_temp == 0 || self.max_evaluations == 0 {
            return Err(Error::config("moves_per_temp and max_evaluations must be positive"));
        }
        if !(self.step_ratio > T::zero()) {
            return Err(Error::config("step_ratio must be positive"));
        }
        Ok(())
    }
}

/// `1` for non-worsening moves, `exp(−Δ/T)` otherwise. Underflows to `0` as `T → 0`.
pub fn acceptance_probability<T: Scalar>(delta: T, temp: T) -> T {
    if !(delta > T::zero()) {
        T::one()
    } else {
        (-delta / temp).exp()
    }
}

/// Metropolis test. Draws a uniform only for worsening moves.
pub fn accept<T: Scalar, R: RandomStream + ?Sized>(delta: T, temp: T, rng: &mut R) -> bool {
    if !(delta > T::zero()) {
        return true;
    }
    rng.uniform() < acceptance_probability(delta, temp).as_f64()
}

pub fn sa_run<T: Scalar>(
    config: &SaConfig<T>,
    problem: &ObjectiveProblem<T>,
    seed: u64,
) -> Result<OptimizationResult<T>> {
    sa_run_with(config, problem, &mut RandomSource::new(seed))
}

pub fn sa_run_with<T: Scalar, R: RandomStream + ?Sized>(
    config: &SaConfig<T>,
    problem: &ObjectiveProblem<T>,
    rng: &mut R,
) -> Result<OptimizationResult<T>> {
    config.validate()?;
    let space = problem.space();
    let step = StepConfig::from_space(space, config.step_ratio, T::one())?;

    let mut current = uniform_sample(space, rng);
    let mut current_f = problem.fitness(&current)?;
    let mut best = BestSoFar::new(current.clone(), current_f);
    let mut temp = config.initial_temp;
    let mut level = 0;
    let row = |level, evaluations, best: &BestSoFar<T>| TraceEntry {
        generation: level,
        evaluations,
        best_fitness: best.fitness,
        diversity: None,
    };
    let mut trace = vec![row(0, 1, &best)];

    for moves in 1..config.max_evaluations {
        let mut candidate = local_walk(&current, T::one(), &step, rng)?;
        space.clamp(&mut candidate);
        let f = problem.fitness(&candidate)?;
        if accept(f - current_f, temp, rng) {
            current = candidate;
            current_f = f;
            best.offer(&current, current_f);
        }
        if moves % config.moves_per_temp == 0 {
            temp = temp * config.cooling_rate;
            level += 1;
            trace.push(row(level, moves + 1, &best));
        }
    }
    if trace.last().map(|t| t.evaluations) != Some(config.max_evaluations) {
        trace.push(row(level, config.max_evaluations, &best));
    }
    Ok(OptimizationResult {
        algorithm: "sa".to_string(),
        best_point: best.point,
        best_fitness: best.fitness,
        evaluations: config.max_evaluations,
        generations: level,
        trace,
    })
}
