//! Problem model: a single objective over a bounded box, with optional
//! equality and inequality constraints, plus the standard benchmark suite.
//!
//! Benchmark definitions (n = dimension):
//!
//! ```text
//! sphere      f(x) = Σ x_i²                                            [-5.12, 5.12]ⁿ   min 0 at 0
//! rosenbrock  f(x) = Σ_{i<n} 100 (x_{i+1} − x_i²)² + (1 − x_i)²        [-5, 10]ⁿ        min 0 at 1
//! rastrigin   f(x) = 10 n + Σ (x_i² − 10 cos(2π x_i))                  [-5.12, 5.12]ⁿ   min 0 at 0
//! ackley      f(x) = −20 exp(−0.2 √(Σ x_i² / n)) − exp(Σ cos(2π x_i) / n) + 20 + e
//!                                                                      [-32.768, 32.768]ⁿ min 0 at 0
//! griewank    f(x) = 1 + Σ x_i² / 4000 − Π cos(x_i / √i)  (i from 1)   [-600, 600]ⁿ     min 0 at 0
//! ```

use std::fmt;
use std::sync::Arc;

use crate::error::{check_dim, Error, Result};
use crate::scalar::Scalar;

/// Axis-aligned feasible box `[lower, upper]`.
#[derive(Debug, Clone, PartialEq)]
pub struct SearchSpace<T> {
    lower: Vec<T>,
    upper: Vec<T>,
}

impl<T: Scalar> SearchSpace<T> {
    /// Requires equal lengths, at least one dimension, finite bounds and
    /// `lower[i] < upper[i]` for every axis.
    pub fn new(lower: Vec<T>, upper: Vec<T>) -> Result<Self> {
        check_dim(lower.len(), upper.len())?;
        if lower.is_empty() {
            return Err(Error::input("search space must have at least one dimension"));
        }
        for (i, (l, u)) in lower.iter().zip(&upper).enumerate() {
            if !l.is_finite() || !u.is_finite() {
                return Err(Error::input(format!("non-finite bound on axis {i}")));
            }
            if !(*l < *u) {
                return Err(Error::input(format!("degenerate bounds on axis {i}: lower {l} must be < upper {u}")));
            }
        }
        Ok(Self { lower, upper })
    }

    /// The hypercube `[lo, hi]^dim`.
    pub fn cube(dim: usize, lo: T, hi: T) -> Result<Self> {
        Self::new(vec![lo; dim], vec![hi; dim])
    }

    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    pub fn lower(&self) -> &[T] {
        &self.lower
    }

    pub fn upper(&self) -> &[T] {
        &self.upper
    }

    /// `U − L` per axis.
    pub fn widths(&self) -> Vec<T> {
        self.lower.iter().zip(&self.upper).map(|(&l, &u)| u - l).collect()
    }

    pub fn contains(&self, x: &[T]) -> bool {
        x.len() == self.dim() && x.iter().zip(self.lower.iter().zip(&self.upper)).all(|(&v, (&l, &u))| l <= v && v <= u)
    }

    /// Component-wise clamp into the box. NaN coordinates are sent to the lower bound.
    pub fn clamp(&self, x: &mut [T]) {
        for (v, (&l, &u)) in x.iter_mut().zip(self.lower.iter().zip(&self.upper)) {
            *v = if v.is_nan() { l } else { v.max(l).min(u) };
        }
    }
}

/// Shared, thread-safe scalar function of a design vector.
pub type ScalarFn<T> = Arc<dyn Fn(&[T]) -> T + Send + Sync>;

type Benchmark<T> = fn(&[T]) -> T;

/// Weights of the static quadratic penalty
/// `f(x) + μ Σ h_j(x)² + λ Σ max(0, g_k(x))²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PenaltyConfig<T> {
    pub eq_weight: T,
    pub ineq_weight: T,
}

impl<T: Scalar> PenaltyConfig<T> {
    pub fn new(eq_weight: T, ineq_weight: T) -> Result<Self> {
        if !(eq_weight >= T::zero()) || !(ineq_weight >= T::zero()) {
            return Err(Error::config("penalty weights must be non-negative"));
        }
        Ok(Self { eq_weight, ineq_weight })
    }
}

impl<T: Scalar> Default for PenaltyConfig<T> {
    fn default() -> Self {
        Self { eq_weight: T::of(1e3), ineq_weight: T::of(1e3) }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct KnownOptimum<T> {
    pub point: Vec<T>,
    pub value: T,
}

/// A single-objective minimization problem `min f(x)` subject to
/// `h_j(x) = 0` and `g_k(x) ≤ 0` inside a box.
#[derive(Clone)]
pub struct ObjectiveProblem<T> {
    name: String,
    objective: ScalarFn<T>,
    space: SearchSpace<T>,
    known_optimum: Option<KnownOptimum<T>>,
    equality: Vec<ScalarFn<T>>,
    inequality: Vec<ScalarFn<T>>,
    penalty: PenaltyConfig<T>,
}

impl<T: Scalar> fmt::Debug for ObjectiveProblem<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ObjectiveProblem")
            .field("name", &self.name)
            .field("space", &self.space)
            .field("known_optimum", &self.known_optimum)
            .field("equality_constraints", &self.equality.len())
            .field("inequality_constraints", &self.inequality.len())
            .finish()
    }
}

impl<T: Scalar> ObjectiveProblem<T> {
    pub fn new<F>(name: impl Into<String>, space: SearchSpace<T>, objective: F) -> Self
    where
        F: Fn(&[T]) -> T + Send + Sync + 'static,
    {
        Self {
            name: name.into(),
            objective: Arc::new(objective),
            space,
            known_optimum: None,
            equality: Vec::new(),
            inequality: Vec::new(),
            penalty: PenaltyConfig::default(),
        }
    }

    /// Attaches the known global minimum. The point must lie inside the box.
    pub fn with_known_optimum(mut self, point: Vec<T>, value: T) -> Result<Self> {
        check_dim(self.space.dim(), point.len())?;
        if !self.space.contains(&point) {
            return Err(Error::input("known optimum lies outside the search space"));
        }
        self.known_optimum = Some(KnownOptimum { point, value });
        Ok(self)
    }

    /// Adds an equality constraint `h(x) = 0`.
    pub fn with_equality<F>(mut self, h: F) -> Self
    where
        F: Fn(&[T]) -> T + Send + Sync + 'static,
    {
        self.equality.push(Arc::new(h));
        self
    }

    /// Adds an inequality constraint `g(x) ≤ 0`.
    pub fn with_inequality<F>(mut self, g: F) -> Self
    where
        F: Fn(&[T]) -> T + Send + Sync + 'static,
    {
        self.inequality.push(Arc::new(g));
        self
    }

    /// Penalty weights used by [`fitness`](Self::fitness).
    pub fn with_penalty(mut self, penalty: PenaltyConfig<T>) -> Self {
        self.penalty = penalty;
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn space(&self) -> &SearchSpace<T> {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn known_optimum(&self) -> Option<&KnownOptimum<T>> {
        self.known_optimum.as_ref()
    }

    pub fn is_constrained(&self) -> bool {
        !self.equality.is_empty() || !self.inequality.is_empty()
    }

    /// Raw objective value `f(x)`.
    pub fn evaluate(&self, x: &[T]) -> Result<T> {
        check_dim(self.space.dim(), x.len())?;
        Ok((self.objective)(x))
    }

    /// `f(x) + μ Σ h_j(x)² + λ Σ max(0, g_k(x))²`.
    pub fn penalized_evaluate(&self, x: &[T], penalty: &PenaltyConfig<T>) -> Result<T> {
        let f = self.evaluate(x)?;
        if !self.is_constrained() {
            return Ok(f);
        }
        let eq: T = self.equality.iter().map(|h| h(x).powi(2)).sum();
        let ineq: T = self.inequality.iter().map(|g| g(x).max(T::zero()).powi(2)).sum();
        Ok(f + penalty.eq_weight * eq + penalty.ineq_weight * ineq)
    }

    /// Selection fitness used by every optimizer: the penalized objective with
    /// any non-finite value mapped to `+∞`.
    pub fn fitness(&self, x: &[T]) -> Result<T> {
        let v = self.penalized_evaluate(x, &self.penalty)?;
        Ok(if v.is_finite() { v } else { T::infinity() })
    }
}

pub fn sphere<T: Scalar>(x: &[T]) -> T {
    x.iter().map(|&v| v * v).sum()
}

pub fn rosenbrock<T: Scalar>(x: &[T]) -> T {
    let hundred = T::of(100.0);
    x.windows(2).map(|w| hundred * (w[1] - w[0] * w[0]).powi(2) + (T::one() - w[0]).powi(2)).sum()
}

pub fn rastrigin<T: Scalar>(x: &[T]) -> T {
    let ten = T::of(10.0);
    let two_pi = T::TAU();
    ten * T::of(x.len() as f64) + x.iter().map(|&v| v * v - ten * (two_pi * v).cos()).sum::<T>()
}

pub fn ackley<T: Scalar>(x: &[T]) -> T {
    let n = T::of(x.len() as f64);
    let mean_sq = x.iter().map(|&v| v * v).sum::<T>() / n;
    let mean_cos = x.iter().map(|&v| (T::TAU() * v).cos()).sum::<T>() / n;
    -T::of(20.0) * (-T::of(0.2) * mean_sq.sqrt()).exp() - mean_cos.exp() + T::of(20.0) + T::E()
}

pub fn griewank<T: Scalar>(x: &[T]) -> T {
    let sum = x.iter().map(|&v| v * v).sum::<T>() / T::of(4000.0);
    let prod = x.iter().enumerate().fold(T::one(), |acc, (i, &v)| acc * (v / T::of((i + 1) as f64).sqrt()).cos());
    T::one() + sum - prod
}

/// Names accepted by [`by_name`], in suite order.
pub const PROBLEM_NAMES: [&str; 5] = ["sphere", "rosenbrock", "rastrigin", "ackley", "griewank"];

/// Builds a named benchmark problem at dimension `dim`, with canonical bounds
/// and its known optimum attached.
pub fn by_name<T: Scalar>(name: &str, dim: usize) -> Result<ObjectiveProblem<T>> {
    if dim == 0 {
        return Err(Error::input("benchmark dimension must be at least 1"));
    }
    let (bound_lo, bound_hi, opt_coord, f): (f64, f64, f64, Benchmark<T>) = match name {
        "sphere" => (-5.12, 5.12, 0.0, sphere::<T>),
        "rosenbrock" => (-5.0, 10.0, 1.0, rosenbrock::<T>),
        "rastrigin" => (-5.12, 5.12, 0.0, rastrigin::<T>),
        "ackley" => (-32.768, 32.768, 0.0, ackley::<T>),
        "griewank" => (-600.0, 600.0, 0.0, griewank::<T>),
        _ => {
            return Err(Error::UnknownName { kind: "problem", name: name.to_string() });
        }
    };
    let space = SearchSpace::cube(dim, T::of(bound_lo), T::of(bound_hi))?;
    ObjectiveProblem::new(name, space, f).with_known_optimum(vec![T::of(opt_coord); dim], T::zero())
}

/// The full benchmark suite at one dimension.
pub fn benchmark_suite<T: Scalar>(dim: usize) -> Result<Vec<ObjectiveProblem<T>>> {
    PROBLEM_NAMES.iter().map(|name| by_name(name, dim)).collect()
}
