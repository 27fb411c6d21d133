//! Differential evolution, rand/1/bin.
//!
//! For each target `x_i`: pick distinct `a, b, c ≠ i`, form the mutant
//! `a + F (b − c)`, cross it with `x_i` binomially (rate CR, one guaranteed
//! mutant axis), clamp to the box, and keep the trial if it is no worse than
//! the target. Selection is synchronous per generation.

use crate::error::{check_dim, Error, Result};
use crate::harness::diversity;
use crate::problem::{ObjectiveProblem, SearchSpace};
use crate::result::{OptimizationResult, TraceEntry};
use crate::scalar::Scalar;
use crate::walks::{coin, uniform_sample, RandomSource, RandomStream};

#[derive(Debug, Clone, PartialEq)]
pub struct DeConfig<T> {
    pub pop_size: usize,
    pub differential_weight: T,
    pub crossover_rate: T,
    pub max_generations: usize,
}

impl<T: Scalar> Default for DeConfig<T> {
    fn default() -> Self {
        Self { pop_size: 20, differential_weight: T::of(0.5), crossover_rate: T::of(0.9), max_generations: 1000 }
    }
}

impl<T: Scalar> DeConfig<T> {
    pub fn validate(&self) -> Result<()> {
        if self.pop_size < 4 {
            return Err(Error::config("DE needs pop_size of at least 4"));
        }
        if !(self.differential_weight >= T::zero()) || !self.differential_weight.is_finite() {
            return Err(Error::config("differential_weight must be non-negative"));
        }
        if !(self.crossover_rate >= T::zero() && self.crossover_rate <= T::one()) {
            return Err(Error::config("crossover_rate must lie in [0, 1]"));
        }
        Ok(())
    }

    pub fn evaluations_for(&self, generations: usize) -> usize {
        self.pop_size * (generations + 1)
    }
}

/// A trial vector and the donor indices `(a, b, c)` that built it.
#[derive(Debug, Clone, PartialEq)]
pub struct Trial<T> {
    pub vector: Vec<T>,
    pub donors: [usize; 3],
}

#[derive(Debug, Clone, PartialEq)]
pub struct DePopulation<T> {
    members: Vec<Vec<T>>,
    fitnesses: Vec<T>,
    best_index: usize,
    generation: usize,
    evaluations: usize,
}

impl<T: Scalar> DePopulation<T> {
    pub fn initialize<R: RandomStream + ?Sized>(
        config: &DeConfig<T>,
        problem: &ObjectiveProblem<T>,
        rng: &mut R,
    ) -> Result<Self> {
        config.validate()?;
        let members = (0..config.pop_size).map(|_| uniform_sample(problem.space(), rng)).collect();
        Self::from_members(members, problem)
    }

    pub fn from_members(members: Vec<Vec<T>>, problem: &ObjectiveProblem<T>) -> Result<Self> {
        if members.len() < 4 {
            return Err(Error::input("DE population needs at least 4 members"));
        }
        for m in &members {
            check_dim(problem.dim(), m.len())?;
        }
        let fitnesses = members.iter().map(|m| problem.fitness(m)).collect::<Result<Vec<_>>>()?;
        let mut best_index = 0;
        for i in 1..fitnesses.len() {
            if fitnesses[i] < fitnesses[best_index] {
                best_index = i;
            }
        }
        Ok(Self { evaluations: members.len(), members, fitnesses, best_index, generation: 0 })
    }

    pub fn members(&self) -> &[Vec<T>] {
        &self.members
    }

    pub fn fitnesses(&self) -> &[T] {
        &self.fitnesses
    }

    pub fn best(&self) -> (&[T], T) {
        (&self.members[self.best_index], self.fitnesses[self.best_index])
    }

    /// Three distinct indices, none equal to `target`, drawn without replacement.
    fn donors<R: RandomStream + ?Sized>(&self, target: usize, rng: &mut R) -> [usize; 3] {
        let mut pool: Vec<usize> = (0..self.members.len()).filter(|&k| k != target).collect();
        let mut out = [0; 3];
        for slot in &mut out {
            *slot = pool.swap_remove(rng.index(pool.len()));
        }
        out
    }

    pub fn trial<R: RandomStream + ?Sized>(
        &self,
        target: usize,
        config: &DeConfig<T>,
        space: &SearchSpace<T>,
        rng: &mut R,
    ) -> Trial<T> {
        let [a, b, c] = self.donors(target, rng);
        let dim = space.dim();
        let forced = rng.index(dim);
        let cr = config.crossover_rate.as_f64();
        let x = &self.members[target];
        let mut vector: Vec<T> = (0..dim)
            .map(|j| {
                if coin(rng, cr) || j == forced {
                    self.members[a][j] + config.differential_weight * (self.members[b][j] - self.members[c][j])
                } else {
                    x[j]
                }
            })
            .collect();
        space.clamp(&mut vector);
        Trial { vector, donors: [a, b, c] }
    }

    /// Greedy one-to-one selection: the trial survives if it is no worse.
    pub fn select(&mut self, target: usize, trial: Vec<T>, fitness: T) -> bool {
        if fitness <= self.fitnesses[target] {
            self.members[target] = trial;
            self.fitnesses[target] = fitness;
            if fitness < self.fitnesses[self.best_index] {
                self.best_index = target;
            }
            true
        } else {
            false
        }
    }

    pub fn trace(&self) -> Result<TraceEntry<T>> {
        Ok(TraceEntry {
            generation: self.generation,
            evaluations: self.evaluations,
            best_fitness: self.fitnesses[self.best_index],
            diversity: Some(diversity(&self.members, &self.members[self.best_index])?),
        })
    }

    pub fn step<R: RandomStream + ?Sized>(
        &mut self,
        config: &DeConfig<T>,
        problem: &ObjectiveProblem<T>,
        rng: &mut R,
    ) -> Result<TraceEntry<T>> {
        let trials: Vec<Vec<T>> =
            (0..self.members.len()).map(|i| self.trial(i, config, problem.space(), rng).vector).collect();
        for (i, t) in trials.into_iter().enumerate() {
            let f = problem.fitness(&t)?;
            self.evaluations += 1;
            self.select(i, t, f);
        }
        self.generation += 1;
        self.trace()
    }
}

pub fn de_run<T: Scalar>(
    config: &DeConfig<T>,
    problem: &ObjectiveProblem<T>,
    seed: u64,
) -> Result<OptimizationResult<T>> {
    de_run_with(config, problem, &mut RandomSource::new(seed))
}

pub fn de_run_with<T: Scalar, R: RandomStream + ?Sized>(
    config: &DeConfig<T>,
    problem: &ObjectiveProblem<T>,
    rng: &mut R,
) -> Result<OptimizationResult<T>> {
    let mut pop = DePopulation::initialize(config, problem, rng)?;
    let mut trace = vec![pop.trace()?];
    while pop.generation < config.max_generations {
        trace.push(pop.step(config, problem, rng)?);
    }
    let (point, fitness) = pop.best();
    Ok(OptimizationResult {
        algorithm: "de".to_string(),
        best_point: point.to_vec(),
        best_fitness: fitness,
        evaluations: pop.evaluations,
        generations: pop.generation,
        trace,
    })
}
