//! Generalized evolutionary walk.
//!
//! ```text
//! initialize n walkers uniformly in [L, U]; evaluate; g* = best
//! while t < max_generations and best > target:
//!     for each of the m worst walkers (never the best):
//!         if rand < α:  x = clamp(g* + ε ∘ d)      ε ~ N(0, σ²), d = step_ratio · (U − L)
//!         else:         x = L + (U − L) ∘ ε_u      ε_u ~ Unif[0, 1]
//!         replace the walker by x and evaluate it
//!     g* = best so far; t += 1
//! ```
//!
//! The coin is flipped once per replaced walker. Because the best walker is
//! never discarded, `g*` is always a member of the population and elitism is
//! implicit.

use crate::error::{Error, Result};
use crate::harness::diversity;
use crate::problem::{ObjectiveProblem, SearchSpace};
use crate::result::{OptimizationResult, TraceEntry};
use crate::scalar::Scalar;
use crate::walks::{best_walk, coin, uniform_sample, RandomSource, RandomStream, StepConfig};

#[derive(Debug, Clone, PartialEq)]
pub struct GewaConfig<T> {
    /// Number of walkers.
    pub n: usize,
    /// Probability of a local walk around `g*` rather than a uniform resample.
    pub alpha: T,
    /// Step length as a fraction of each axis' range.
    pub step_ratio: T,
    pub sigma: T,
    /// Worst walkers replaced per generation, in `1..n`.
    pub replace_count: usize,
    pub max_generations: usize,
    /// Stop as soon as the best fitness is at or below this value.
    pub target_fitness: Option<T>,
}

impl<T: Scalar> Default for GewaConfig<T> {
    fn default() -> Self {
        Self {
            n: 20,
            alpha: T::of(0.5),
            step_ratio: T::of(0.01),
            sigma: T::one(),
            replace_count: 1,
            max_generations: 1000,
            target_fitness: None,
        }
    }
}

impl<T: Scalar> GewaConfig<T> {
    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::config(format!("GEWA needs at least 2 walkers, got {}", self.n)));
        }
        if self.replace_count < 1 || self.replace_count >= self.n {
            return Err(Error::config(format!(
                "replace_count must lie in [1, {}], got {}",
                self.n - 1,
                self.replace_count
            )));
        }
        if !(self.alpha >= T::zero() && self.alpha <= T::one()) {
            return Err(Error::config("alpha must lie in [0, 1]"));
        }
        if !(self.step_ratio > T::zero()) || !self.step_ratio.is_finite() {
            return Err(Error::config("step_ratio must be positive"));
        }
        if !(self.sigma > T::zero()) || !self.sigma.is_finite() {
            return Err(Error::config("sigma must be positive"));
        }
        Ok(())
    }

    /// Local-walk step configuration, `d = step_ratio · (U − L)`.
    pub fn step_config(&self, space: &SearchSpace<T>) -> Result<StepConfig<T>> {
        StepConfig::from_space(space, self.step_ratio, self.sigma)
    }

    /// Objective evaluations consumed by `generations` generations.
    pub fn evaluations_for(&self, generations: usize) -> usize {
        self.n + self.replace_count * generations
    }
}

/// The walkers, their fitnesses and the global best `g*`.
#[derive(Debug, Clone, PartialEq)]
pub struct WalkerPopulation<T> {
    positions: Vec<Vec<T>>,
    fitnesses: Vec<T>,
    best_index: usize,
    best_point: Vec<T>,
    best_fitness: T,
    generation: usize,
    evaluations: usize,
}

impl<T: Scalar> WalkerPopulation<T> {
    /// Builds a population from already evaluated walkers. The best is the
    /// lowest fitness, ties going to the lowest index.
    pub fn from_evaluated(positions: Vec<Vec<T>>, fitnesses: Vec<T>) -> Result<Self> {
        if positions.len() != fitnesses.len() {
            return Err(Error::input("positions and fitnesses differ in length"));
        }
        if positions.is_empty() {
            return Err(Error::input("empty population"));
        }
        let dim = positions[0].len();
        if positions.iter().any(|p| p.len() != dim) {
            return Err(Error::input("walkers differ in dimension"));
        }
        let best_index = argmin(&fitnesses);
        let evaluations = positions.len();
        Ok(Self {
            best_point: positions[best_index].clone(),
            best_fitness: fitnesses[best_index],
            positions,
            fitnesses,
            best_index,
            generation: 0,
            evaluations,
        })
    }

    pub fn positions(&self) -> &[Vec<T>] {
        &self.positions
    }

    pub fn fitnesses(&self) -> &[T] {
        &self.fitnesses
    }

    pub fn best_index(&self) -> usize {
        self.best_index
    }

    pub fn best_point(&self) -> &[T] {
        &self.best_point
    }

    pub fn best_fitness(&self) -> T {
        self.best_fitness
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn generation(&self) -> usize {
        self.generation
    }

    pub fn evaluations(&self) -> usize {
        self.evaluations
    }

    /// Indices of the `m` worst walkers, worst first, excluding the best.
    /// Equal fitnesses are ordered by index.
    pub fn worst_indices(&self, m: usize) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.len()).filter(|&i| i != self.best_index).collect();
        order.sort_by(|&a, &b| {
            self.fitnesses[b].partial_cmp(&self.fitnesses[a]).unwrap_or(std::cmp::Ordering::Equal).then(a.cmp(&b))
        });
        order.truncate(m);
        order
    }

    pub fn trace(&self) -> Result<TraceEntry<T>> {
        Ok(TraceEntry {
            generation: self.generation,
            evaluations: self.evaluations,
            best_fitness: self.best_fitness,
            diversity: Some(diversity(&self.positions, &self.best_point)?),
        })
    }

    fn refresh_best(&mut self) {
        // Strict improvement only, so g* never moves between equal fitnesses.
        for (i, &f) in self.fitnesses.iter().enumerate() {
            if f < self.best_fitness {
                self.best_fitness = f;
                self.best_index = i;
            }
        }
        self.best_point.clone_from(&self.positions[self.best_index]);
    }
}

fn argmin<T: Scalar>(values: &[T]) -> usize {
    let mut best = 0;
    for (i, v) in values.iter().enumerate().skip(1) {
        if *v < values[best] {
            best = i;
        }
    }
    best
}

/// Draws `n` walkers uniformly from the box and evaluates them.
pub fn initialize<T: Scalar, R: RandomStream + ?Sized>(
    config: &GewaConfig<T>,
    problem: &ObjectiveProblem<T>,
    rng: &mut R,
) -> Result<WalkerPopulation<T>> {
    config.validate()?;
    let space = problem.space();
    let positions: Vec<Vec<T>> = (0..config.n).map(|_| uniform_sample(space, rng)).collect();
    let fitnesses = positions.iter().map(|x| problem.fitness(x)).collect::<Result<Vec<_>>>()?;
    WalkerPopulation::from_evaluated(positions, fitnesses)
}

/// One candidate: with probability α a clamped Gaussian walk around `g*`,
/// otherwise a uniform resample of the box.
pub fn propose<T: Scalar, R: RandomStream + ?Sized>(
    pop: &WalkerPopulation<T>,
    config: &GewaConfig<T>,
    space: &SearchSpace<T>,
    rng: &mut R,
) -> Result<Vec<T>> {
    let step = config.step_config(space)?;
    propose_with(pop, config.alpha, &step, space, rng)
}

fn propose_with<T: Scalar, R: RandomStream + ?Sized>(
    pop: &WalkerPopulation<T>,
    alpha: T,
    step: &StepConfig<T>,
    space: &SearchSpace<T>,
    rng: &mut R,
) -> Result<Vec<T>> {
    if coin(rng, alpha.as_f64()) {
        let mut x = best_walk(pop.best_point(), step, rng)?;
        space.clamp(&mut x);
        Ok(x)
    } else {
        Ok(uniform_sample(space, rng))
    }
}

/// Replaces the `replace_count` worst walkers with fresh proposals, updates
/// `g*` and returns the generation's trace row.
pub fn step_generation<T: Scalar, R: RandomStream + ?Sized>(
    pop: &mut WalkerPopulation<T>,
    config: &GewaConfig<T>,
    problem: &ObjectiveProblem<T>,
    rng: &mut R,
) -> Result<TraceEntry<T>> {
    let space = problem.space();
    let step = config.step_config(space)?;
    step_generation_with(pop, config, &step, problem, rng)
}

fn step_generation_with<T: Scalar, R: RandomStream + ?Sized>(
    pop: &mut WalkerPopulation<T>,
    config: &GewaConfig<T>,
    step: &StepConfig<T>,
    problem: &ObjectiveProblem<T>,
    rng: &mut R,
) -> Result<TraceEntry<T>> {
    let space = problem.space();
    for i in pop.worst_indices(config.replace_count) {
        let x = propose_with(pop, config.alpha, step, space, rng)?;
        pop.fitnesses[i] = problem.fitness(&x)?;
        pop.positions[i] = x;
        pop.evaluations += 1;
    }
    pop.refresh_best();
    pop.generation += 1;
    pop.trace()
}

/// Full run from a seed.
pub fn run<T: Scalar>(
    config: &GewaConfig<T>,
    problem: &ObjectiveProblem<T>,
    seed: u64,
) -> Result<OptimizationResult<T>> {
    run_with(config, problem, &mut RandomSource::new(seed))
}

/// Full run driven by an arbitrary stream.
pub fn run_with<T: Scalar, R: RandomStream + ?Sized>(
    config: &GewaConfig<T>,
    problem: &ObjectiveProblem<T>,
    rng: &mut R,
) -> Result<OptimizationResult<T>> {
    let mut pop = initialize(config, problem, rng)?;
    let step = config.step_config(problem.space())?;
    let reached = |pop: &WalkerPopulation<T>| config.target_fitness.is_some_and(|t| pop.best_fitness() <= t);

    let mut trace = vec![pop.trace()?];
    while pop.generation() < config.max_generations && !reached(&pop) {
        trace.push(step_generation_with(&mut pop, config, &step, problem, rng)?);
    }
    Ok(OptimizationResult {
        algorithm: "gewa".to_string(),
        best_point: pop.best_point().to_vec(),
        best_fitness: pop.best_fitness(),
        evaluations: pop.evaluations(),
        generations: pop.generation(),
        trace,
    })
}
