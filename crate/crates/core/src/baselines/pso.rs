//! Global-best particle swarm.
//!
//! ```text
//! v ← ω v + c₁ r₁ ∘ (p_best − x) + c₂ r₂ ∘ (g_best − x)     r₁, r₂ ~ Unif[0,1] per axis
//! v ← clamp(v, ±velocity_clamp_ratio · (U − L))
//! x ← clamp(x + v, [L, U])
//! ```
//!
//! Velocities start at zero.

use crate::error::{check_dim, Error, Result};
use crate::harness::diversity;
use crate::problem::ObjectiveProblem;
use crate::result::{OptimizationResult, TraceEntry};
use crate::scalar::Scalar;
use crate::walks::{uniform_sample, RandomSource, RandomStream};

#[derive(Debug, Clone, PartialEq)]
pub struct PsoConfig<T> {
    pub swarm_size: usize,
    pub inertia: T,
    pub cognitive: T,
    pub social: T,
    pub velocity_clamp_ratio: T,
    pub max_generations: usize,
}

impl<T: Scalar> Default for PsoConfig<T> {
    fn default() -> Self {
        Self {
            swarm_size: 20,
            inertia: T::of(0.7),
            cognitive: T::of(1.5),
            social: T::of(1.5),
            velocity_clamp_ratio: T::of(0.2),
            max_generations: 1000,
        }
    }
}

impl<T: Scalar> PsoConfig<T> {
    pub fn validate(&self) -> Result<()> {
        if self.swarm_size < 2 {
            return Err(Error::config("swarm_size must be at least 2"));
        }
        for (name, v) in [("inertia", self.inertia), ("cognitive", self.cognitive), ("social", self.social)] {
            if !(v >= T::zero()) || !v.is_finite() {
                return Err(Error::config(format!("{name} must be non-negative")));
            }
        }
        if !(self.velocity_clamp_ratio > T::zero()) {
            return Err(Error::config("velocity_clamp_ratio must be positive"));
        }
        Ok(())
    }

    pub fn evaluations_for(&self, generations: usize) -> usize {
        self.swarm_size * (generations + 1)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Swarm<T> {
    positions: Vec<Vec<T>>,
    velocities: Vec<Vec<T>>,
    personal_best: Vec<Vec<T>>,
    personal_best_fitness: Vec<T>,
    global_best: Vec<T>,
    global_best_fitness: T,
    generation: usize,
    evaluations: usize,
}

impl<T: Scalar> Swarm<T> {
    /// Uniform positions, zero velocities.
    pub fn initialize<R: RandomStream + ?Sized>(
        config: &PsoConfig<T>,
        problem: &ObjectiveProblem<T>,
        rng: &mut R,
    ) -> Result<Self> {
        config.validate()?;
        let positions: Vec<Vec<T>> = (0..config.swarm_size).map(|_| uniform_sample(problem.space(), rng)).collect();
        let velocities = vec![vec![T::zero(); problem.dim()]; config.swarm_size];
        Self::from_state(positions, velocities, problem)
    }

    /// Evaluates the given positions; each becomes its particle's personal best.
    pub fn from_state(positions: Vec<Vec<T>>, velocities: Vec<Vec<T>>, problem: &ObjectiveProblem<T>) -> Result<Self> {
        if positions.is_empty() || positions.len() != velocities.len() {
            return Err(Error::input("positions and velocities must be non-empty and equal in count"));
        }
        for (x, v) in positions.iter().zip(&velocities) {
            check_dim(problem.dim(), x.len())?;
            check_dim(problem.dim(), v.len())?;
        }
        let fitness = positions.iter().map(|x| problem.fitness(x)).collect::<Result<Vec<_>>>()?;
        let mut g = 0;
        for i in 1..fitness.len() {
            if fitness[i] < fitness[g] {
                g = i;
            }
        }
        Ok(Self {
            global_best: positions[g].clone(),
            global_best_fitness: fitness[g],
            evaluations: positions.len(),
            personal_best: positions.clone(),
            personal_best_fitness: fitness,
            positions,
            velocities,
            generation: 0,
        })
    }

    pub fn positions(&self) -> &[Vec<T>] {
        &self.positions
    }

    pub fn velocities(&self) -> &[Vec<T>] {
        &self.velocities
    }

    pub fn global_best(&self) -> (&[T], T) {
        (&self.global_best, self.global_best_fitness)
    }

    pub fn trace(&self) -> Result<TraceEntry<T>> {
        Ok(TraceEntry {
            generation: self.generation,
            evaluations: self.evaluations,
            best_fitness: self.global_best_fitness,
            diversity: Some(diversity(&self.positions, &self.global_best)?),
        })
    }

    /// One synchronous velocity/position update of every particle.
    pub fn step<R: RandomStream + ?Sized>(
        &mut self,
        config: &PsoConfig<T>,
        problem: &ObjectiveProblem<T>,
        rng: &mut R,
    ) -> Result<TraceEntry<T>> {
        let space = problem.space();
        let vmax: Vec<T> = space.widths().into_iter().map(|w| w * config.velocity_clamp_ratio).collect();
        for i in 0..self.positions.len() {
            let x = &mut self.positions[i];
            let v = &mut self.velocities[i];
            let p = &self.personal_best[i];
            for j in 0..x.len() {
                let r1 = T::of(rng.uniform());
                let r2 = T::of(rng.uniform());
                let vj = config.inertia * v[j]
                    + config.cognitive * r1 * (p[j] - x[j])
                    + config.social * r2 * (self.global_best[j] - x[j]);
                v[j] = vj.max(-vmax[j]).min(vmax[j]);
                x[j] = x[j] + v[j];
            }
            space.clamp(x);
        }
        for i in 0..self.positions.len() {
            let f = problem.fitness(&self.positions[i])?;
            self.evaluations += 1;
            if f < self.personal_best_fitness[i] {
                self.personal_best_fitness[i] = f;
                self.personal_best[i].clone_from(&self.positions[i]);
                if f < self.global_best_fitness {
                    self.global_best_fitness = f;
                    self.global_best.clone_from(&self.positions[i]);
                }
            }
        }
        self.generation += 1;
        self.trace()
    }
}

pub fn pso_run<T: Scalar>(
    config: &PsoConfig<T>,
    problem: &ObjectiveProblem<T>,
    seed: u64,
) -> Result<OptimizationResult<T>> {
    pso_run_with(config, problem, &mut RandomSource::new(seed))
}

pub fn pso_run_with<T: Scalar, R: RandomStream + ?Sized>(
    config: &PsoConfig<T>,
    problem: &ObjectiveProblem<T>,
    rng: &mut R,
) -> Result<OptimizationResult<T>> {
    let mut swarm = Swarm::initialize(config, problem, rng)?;
    let mut trace = vec![swarm.trace()?];
    while swarm.generation < config.max_generations {
        trace.push(swarm.step(config, problem, rng)?);
    }
    Ok(OptimizationResult {
        algorithm: "pso".to_string(),
        best_point: swarm.global_best.clone(),
        best_fitness: swarm.global_best_fitness,
        evaluations: swarm.evaluations,
        generations: swarm.generation,
        trace,
    })
}
