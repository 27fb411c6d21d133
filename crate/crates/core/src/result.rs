use serde::{Deserialize, Serialize};

use crate::scalar::Scalar;

/// One row of a run's convergence history.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceEntry<T> {
    pub generation: usize,
    pub evaluations: usize,
    /// Best-so-far fitness; non-increasing along a trace.
    pub best_fitness: T,
    /// Mean distance of the population to the best point. `None` for
    /// single-trajectory methods.
    pub diversity: Option<T>,
}

/// Outcome of a single optimizer run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OptimizationResult<T> {
    pub algorithm: String,
    pub best_point: Vec<T>,
    pub best_fitness: T,
    pub evaluations: usize,
    pub generations: usize,
    pub trace: Vec<TraceEntry<T>>,
}

impl<T: Scalar> OptimizationResult<T> {
    pub fn is_trace_monotone(&self) -> bool {
        self.trace.windows(2).all(|w| w[1].best_fitness <= w[0].best_fitness)
    }
}

/// Best-so-far bookkeeping shared by the single-point optimizers.
#[derive(Debug, Clone)]
pub(crate) struct BestSoFar<T> {
    pub point: Vec<T>,
    pub fitness: T,
}

impl<T: Scalar> BestSoFar<T> {
    pub fn new(point: Vec<T>, fitness: T) -> Self {
        Self { point, fitness }
    }

    /// Replaces the record on strict improvement.
    pub fn offer(&mut self, point: &[T], fitness: T) -> bool {
        if fitness < self.fitness {
            self.point.clear();
            self.point.extend_from_slice(point);
            self.fitness = fitness;
            true
        } else {
            false
        }
    }
}
