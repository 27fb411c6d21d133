//! Harmony search.
//!
//! Each improvisation builds a vector axis by axis: with probability HMCR the
//! value is copied from a random memory row and then, with probability PAR,
//! pitch-adjusted by a Gaussian walk of scale `bandwidth_ratio · (U − L)`;
//! otherwise it is drawn uniformly from the axis range. The new harmony
//! replaces the worst memory row when it is strictly better.

use crate::error::{check_dim, Error, Result};
use crate::harness::diversity;
use crate::problem::{ObjectiveProblem, SearchSpace};
use crate::result::{OptimizationResult, TraceEntry};
use crate::scalar::Scalar;
use crate::walks::{coin, uniform_coordinate, uniform_sample, RandomSource, RandomStream};

#[derive(Debug, Clone, PartialEq)]
pub struct HsConfig<T> {
    pub memory_size: usize,
    pub memory_rate: T,
    pub pitch_rate: T,
    pub bandwidth_ratio: T,
    pub max_improvisations: usize,
}

impl<T: Scalar> Default for HsConfig<T> {
    fn default() -> Self {
        Self {
            memory_size: 20,
            memory_rate: T::of(0.9),
            pitch_rate: T::of(0.3),
            bandwidth_ratio: T::of(0.01),
            max_improvisations: 20_000,
        }
    }
}

impl<T: Scalar> HsConfig<T> {
    pub fn validate(&self) -> Result<()> {
        if self.memory_size == 0 {
            return Err(Error::config("memory_size must be positive"));
        }
        let unit = |v: T| v >= T::zero() && v <= T::one();
        if !unit(self.memory_rate) || !unit(self.pitch_rate) {
            return Err(Error::config("memory_rate and pitch_rate must lie in [0, 1]"));
        }
        if !(self.bandwidth_ratio > T::zero()) {
            return Err(Error::config("bandwidth_ratio must be positive"));
        }
        Ok(())
    }

    pub fn evaluations_for(&self, improvisations: usize) -> usize {
        self.memory_size + improvisations
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct HarmonyMemory<T> {
    harmonies: Vec<Vec<T>>,
    fitnesses: Vec<T>,
    best_index: usize,
    improvisations: usize,
    evaluations: usize,
}

impl<T: Scalar> HarmonyMemory<T> {
    pub fn initialize<R: RandomStream + ?Sized>(
        config: &HsConfig<T>,
        problem: &ObjectiveProblem<T>,
        rng: &mut R,
    ) -> Result<Self> {
        config.validate()?;
        let harmonies = (0..config.memory_size).map(|_| uniform_sample(problem.space(), rng)).collect();
        Self::from_harmonies(harmonies, problem)
    }

    pub fn from_harmonies(harmonies: Vec<Vec<T>>, problem: &ObjectiveProblem<T>) -> Result<Self> {
        if harmonies.is_empty() {
            return Err(Error::input("empty harmony memory"));
        }
        for h in &harmonies {
            check_dim(problem.dim(), h.len())?;
        }
        let fitnesses = harmonies.iter().map(|h| problem.fitness(h)).collect::<Result<Vec<_>>>()?;
        let mut memory = Self { evaluations: harmonies.len(), harmonies, fitnesses, best_index: 0, improvisations: 0 };
        memory.best_index = memory.argmin();
        Ok(memory)
    }

    pub fn harmonies(&self) -> &[Vec<T>] {
        &self.harmonies
    }

    pub fn fitnesses(&self) -> &[T] {
        &self.fitnesses
    }

    pub fn best(&self) -> (&[T], T) {
        (&self.harmonies[self.best_index], self.fitnesses[self.best_index])
    }

    fn argmin(&self) -> usize {
        let mut b = 0;
        for i in 1..self.fitnesses.len() {
            if self.fitnesses[i] < self.fitnesses[b] {
                b = i;
            }
        }
        b
    }

    /// Worst row; equal fitnesses go to the lowest index.
    pub fn worst_index(&self) -> usize {
        let mut w = 0;
        for i in 1..self.fitnesses.len() {
            if self.fitnesses[i] > self.fitnesses[w] {
                w = i;
            }
        }
        w
    }

    /// Builds one new harmony. Does not evaluate it.
    pub fn improvise<R: RandomStream + ?Sized>(
        &self,
        config: &HsConfig<T>,
        space: &SearchSpace<T>,
        rng: &mut R,
    ) -> Vec<T> {
        let hmcr = config.memory_rate.as_f64();
        let par = config.pitch_rate.as_f64();
        (0..space.dim())
            .map(|j| {
                let (lo, hi) = (space.lower()[j], space.upper()[j]);
                if coin(rng, hmcr) {
                    let mut v = self.harmonies[rng.index(self.harmonies.len())][j];
                    if coin(rng, par) {
                        let bandwidth = config.bandwidth_ratio * (hi - lo);
                        v = (v + T::of(rng.gaussian()) * bandwidth).max(lo).min(hi);
                    }
                    v
                } else {
                    uniform_coordinate(lo, hi, rng)
                }
            })
            .collect()
    }

    /// Replaces the worst row when `fitness` is strictly better. Returns whether it did.
    pub fn consider(&mut self, harmony: Vec<T>, fitness: T) -> bool {
        let w = self.worst_index();
        if fitness < self.fitnesses[w] {
            self.harmonies[w] = harmony;
            self.fitnesses[w] = fitness;
            if fitness < self.fitnesses[self.best_index] {
                self.best_index = w;
            }
            true
        } else {
            false
        }
    }

    pub fn trace(&self) -> Result<TraceEntry<T>> {
        Ok(TraceEntry {
            generation: self.improvisations,
            evaluations: self.evaluations,
            best_fitness: self.fitnesses[self.best_index],
            diversity: Some(diversity(&self.harmonies, &self.harmonies[self.best_index])?),
        })
    }

    pub fn step<R: RandomStream + ?Sized>(
        &mut self,
        config: &HsConfig<T>,
        problem: &ObjectiveProblem<T>,
        rng: &mut R,
    ) -> Result<TraceEntry<T>> {
        let h = self.improvise(config, problem.space(), rng);
        let f = problem.fitness(&h)?;
        self.evaluations += 1;
        self.improvisations += 1;
        self.consider(h, f);
        self.trace()
    }
}

pub fn hs_run<T: Scalar>(
    config: &HsConfig<T>,
    problem: &ObjectiveProblem<T>,
    seed: u64,
) -> Result<OptimizationResult<T>> {
    hs_run_with(config, problem, &mut RandomSource::new(seed))
}

pub fn hs_run_with<T: Scalar, R: RandomStream + ?Sized>(
    config: &HsConfig<T>,
    problem: &ObjectiveProblem<T>,
    rng: &mut R,
) -> Result<OptimizationResult<T>> {
    let mut memory = HarmonyMemory::initialize(config, problem, rng)?;
    let mut trace = Vec::with_capacity(config.max_improvisations + 1);
    trace.push(memory.trace()?);
    while memory.improvisations < config.max_improvisations {
        trace.push(memory.step(config, problem, rng)?);
    }
    let (point, fitness) = memory.best();
    Ok(OptimizationResult {
        algorithm: "hs".to_string(),
        best_point: point.to_vec(),
        best_fitness: fitness,
        evaluations: memory.evaluations,
        generations: memory.improvisations,
        trace,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problem::by_name;

    fn memory(problem: &ObjectiveProblem<f64>) -> HarmonyMemory<f64> {
        HarmonyMemory::from_harmonies(vec![vec![1.0, 2.0], vec![-1.5, 0.25], vec![3.0, -4.0]], problem).unwrap()
    }

    #[test]
    fn zero_memory_rate_is_uniform_sampling() {
        let p = by_name::<f64>("sphere", 2).unwrap();
        let m = memory(&p);
        let config = HsConfig { memory_rate: 0.0, ..HsConfig::default() };
        let mut a = RandomSource::new(21);
        let mut b = RandomSource::new(21);
        for _ in 0..200 {
            assert_eq!(m.improvise(&config, p.space(), &mut a), uniform_sample(p.space(), &mut b));
        }
    }

    #[test]
    fn pure_memory_copies_values() {
        let p = by_name::<f64>("sphere", 2).unwrap();
        let m = memory(&p);
        let config = HsConfig { memory_rate: 1.0, pitch_rate: 0.0, ..HsConfig::default() };
        let mut rng = RandomSource::new(3);
        for _ in 0..500 {
            let h = m.improvise(&config, p.space(), &mut rng);
            for (j, v) in h.iter().enumerate() {
                assert!(m.harmonies().iter().any(|row| row[j] == *v));
            }
        }
    }

    #[test]
    fn worse_harmony_leaves_memory_unchanged() {
        let p = by_name::<f64>("sphere", 2).unwrap();
        let mut m = memory(&p);
        let before = m.clone();
        assert!(!m.consider(vec![5.0, 5.0], 50.0));
        assert!(!m.consider(vec![3.0, -4.0], 25.0));
        assert_eq!(m, before);
        assert!(m.consider(vec![0.0, 0.0], 0.0));
        assert_eq!(m.best().1, 0.0);
        assert_eq!(m.harmonies()[2], vec![0.0, 0.0]);
    }

    #[test]
    fn run_contract() {
        let p = by_name::<f64>("rastrigin", 2).unwrap();
        let c = HsConfig { max_improvisations: 800, memory_size: 10, ..HsConfig::default() };
        let a = hs_run(&c, &p, 5).unwrap();
        assert_eq!(a, hs_run(&c, &p, 5).unwrap());
        assert_eq!(a.evaluations, 810);
        assert!(a.is_trace_monotone());
        assert!(p.space().contains(&a.best_point));
        assert!(HsConfig::<f64> { pitch_rate: 1.5, ..HsConfig::default() }.validate().is_err());
    }
}
