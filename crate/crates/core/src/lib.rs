//! Black-box optimization toolkit built around the generalized evolutionary
//! walk: a population of walkers that either takes a Gaussian step around the
//! global best or resamples uniformly from the search box, replacing the worst
//! walkers each generation.
//!
//! The numerical modules are generic over the scalar type (`f32` or `f64`);
//! the aliases below pin the common `f64` instantiation. All randomness flows
//! through [`walks::RandomStream`], so every run is reproducible from a seed.

// `!(x > y)` is used on purpose so that NaN fails validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod baselines;
pub mod error;
pub mod gewa;
pub mod harness;
pub mod problem;
pub mod result;
pub mod scalar;
pub mod walks;

pub use error::{Error, Result};
pub use scalar::Scalar;
pub use walks::{RandomSource, RandomStream, ScriptedSource};

pub type SearchSpace = problem::SearchSpace<f64>;
pub type ObjectiveProblem = problem::ObjectiveProblem<f64>;
pub type PenaltyConfig = problem::PenaltyConfig<f64>;
pub type StepConfig = walks::StepConfig<f64>;
pub type GewaConfig = gewa::GewaConfig<f64>;
pub type WalkerPopulation = gewa::WalkerPopulation<f64>;
pub type OptimizationResult = result::OptimizationResult<f64>;
pub type TraceEntry = result::TraceEntry<f64>;

pub type SearchSpaceF32 = problem::SearchSpace<f32>;
pub type ObjectiveProblemF32 = problem::ObjectiveProblem<f32>;
pub type OptimizationResultF32 = result::OptimizationResult<f32>;
