//! Name → algorithm resolution, parameter maps and evaluation-budget
//! translation.
//!
//! Budgets are exact: a population method with `n` members and `m`
//! evaluations per generation is accepted only if `budget − n` is a
//! non-negative multiple of `m`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::baselines::{de_run, hs_run, pso_run, random_search_run, sa_run, DeConfig, HsConfig, PsoConfig, SaConfig};
use crate::error::{Error, Result};
use crate::gewa::{self, GewaConfig};
use crate::problem::ObjectiveProblem;
use crate::result::OptimizationResult;

pub const ALGORITHM_NAMES: [&str; 6] = ["gewa", "sa", "pso", "hs", "de", "random"];

/// An algorithm name with parameter overrides. `pop` is accepted by every
/// population method as an alias for its size parameter.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlgorithmSpec {
    pub name: String,
    #[serde(default)]
    pub params: BTreeMap<String, f64>,
}

impl AlgorithmSpec {
    pub fn new(name: impl Into<String>) -> Self {
        Self { name: name.into(), params: BTreeMap::new() }
    }

    pub fn with(mut self, key: &str, value: f64) -> Self {
        self.params.insert(key.to_string(), value);
        self
    }
}

/// A fully resolved algorithm whose configuration spends exactly the budget.
#[derive(Debug, Clone, PartialEq)]
pub enum Algorithm {
    Gewa(GewaConfig<f64>),
    Sa(SaConfig<f64>),
    Pso(PsoConfig<f64>),
    Hs(HsConfig<f64>),
    De(DeConfig<f64>),
    Random { budget: usize },
}

struct Params<'a> {
    algorithm: &'a str,
    map: &'a BTreeMap<String, f64>,
    used: Vec<&'static str>,
}

impl<'a> Params<'a> {
    fn real(&mut self, key: &'static str, default: f64) -> f64 {
        self.used.push(key);
        self.map.get(key).copied().unwrap_or(default)
    }

    fn count(&mut self, keys: &[&'static str], default: usize) -> Result<usize> {
        self.used.extend_from_slice(keys);
        match keys.iter().find_map(|k| self.map.get(*k).map(|v| (*k, *v))) {
            None => Ok(default),
            Some((_, v)) if v >= 0.0 && v.fract() == 0.0 && v <= u32::MAX as f64 => Ok(v as usize),
            Some((k, v)) => Err(Error::config(format!(
                "{}: parameter `{k}` must be a non-negative integer, got {v}",
                self.algorithm
            ))),
        }
    }

    fn finish(self) -> Result<()> {
        match self.map.keys().find(|k| !self.used.contains(&k.as_str())) {
            Some(k) => Err(Error::config(format!("{}: unknown parameter `{k}`", self.algorithm))),
            None => Ok(()),
        }
    }
}

fn generations(algorithm: &str, budget: usize, initial: usize, per_generation: usize) -> Result<usize> {
    if budget < initial || !(budget - initial).is_multiple_of(per_generation) {
        return Err(Error::config(format!(
            "{algorithm}: budget {budget} is not representable as {initial} + {per_generation}·generations"
        )));
    }
    Ok((budget - initial) / per_generation)
}

impl Algorithm {
    /// Resolves a spec against a common evaluation budget.
    pub fn from_spec(spec: &AlgorithmSpec, budget: usize) -> Result<Self> {
        if budget == 0 {
            return Err(Error::config("evaluation budget must be positive"));
        }
        let name = spec.name.as_str();
        let mut p = Params { algorithm: name, map: &spec.params, used: Vec::new() };
        let algorithm = match name {
            "gewa" => {
                let d = GewaConfig::<f64>::default();
                let mut c = GewaConfig {
                    n: p.count(&["n", "pop"], d.n)?,
                    alpha: p.real("alpha", d.alpha),
                    step_ratio: p.real("step_ratio", d.step_ratio),
                    sigma: p.real("sigma", d.sigma),
                    replace_count: p.count(&["replace_count"], d.replace_count)?,
                    max_generations: 0,
                    target_fitness: None,
                };
                c.validate()?;
                c.max_generations = generations(name, budget, c.n, c.replace_count)?;
                Algorithm::Gewa(c)
            }
            "sa" => {
                let d = SaConfig::<f64>::default();
                let c = SaConfig {
                    initial_temp: p.real("initial_temp", d.initial_temp),
                    cooling_rate: p.real("cooling_rate", d.cooling_rate),
                    moves_per_temp: p.count(&["moves_per_temp"], d.moves_per_temp)?,
                    step_ratio: p.real("step_ratio", d.step_ratio),
                    max_evaluations: budget,
                };
                c.validate()?;
                Algorithm::Sa(c)
            }
            "pso" => {
                let d = PsoConfig::<f64>::default();
                let mut c = PsoConfig {
                    swarm_size: p.count(&["swarm_size", "pop"], d.swarm_size)?,
                    inertia: p.real("inertia", d.inertia),
                    cognitive: p.real("cognitive", d.cognitive),
                    social: p.real("social", d.social),
                    velocity_clamp_ratio: p.real("velocity_clamp_ratio", d.velocity_clamp_ratio),
                    max_generations: 0,
                };
                c.validate()?;
                c.max_generations = generations(name, budget, c.swarm_size, c.swarm_size)?;
                Algorithm::Pso(c)
            }
            "hs" => {
                let d = HsConfig::<f64>::default();
                let mut c = HsConfig {
                    memory_size: p.count(&["memory_size", "pop"], d.memory_size)?,
                    memory_rate: p.real("memory_rate", d.memory_rate),
                    pitch_rate: p.real("pitch_rate", d.pitch_rate),
                    bandwidth_ratio: p.real("bandwidth_ratio", d.bandwidth_ratio),
                    max_improvisations: 0,
                };
                c.validate()?;
                c.max_improvisations = generations(name, budget, c.memory_size, 1)?;
                Algorithm::Hs(c)
            }
            "de" => {
                let d = DeConfig::<f64>::default();
                let mut c = DeConfig {
                    pop_size: p.count(&["pop_size", "pop"], d.pop_size)?,
                    differential_weight: p.real("differential_weight", d.differential_weight),
                    crossover_rate: p.real("crossover_rate", d.crossover_rate),
                    max_generations: 0,
                };
                c.validate()?;
                c.max_generations = generations(name, budget, c.pop_size, c.pop_size)?;
                Algorithm::De(c)
            }
            "random" => Algorithm::Random { budget },
            _ => return Err(Error::UnknownName { kind: "algorithm", name: name.to_string() }),
        };
        p.finish()?;
        Ok(algorithm)
    }

    pub fn name(&self) -> &'static str {
        match self {
            Algorithm::Gewa(_) => "gewa",
            Algorithm::Sa(_) => "sa",
            Algorithm::Pso(_) => "pso",
            Algorithm::Hs(_) => "hs",
            Algorithm::De(_) => "de",
            Algorithm::Random { .. } => "random",
        }
    }

    /// Objective evaluations a full run spends.
    pub fn budget(&self) -> usize {
        match self {
            Algorithm::Gewa(c) => c.evaluations_for(c.max_generations),
            Algorithm::Sa(c) => c.max_evaluations,
            Algorithm::Pso(c) => c.evaluations_for(c.max_generations),
            Algorithm::Hs(c) => c.evaluations_for(c.max_improvisations),
            Algorithm::De(c) => c.evaluations_for(c.max_generations),
            Algorithm::Random { budget } => *budget,
        }
    }

    pub fn run(&self, problem: &ObjectiveProblem<f64>, seed: u64) -> Result<OptimizationResult<f64>> {
        match self {
            Algorithm::Gewa(c) => gewa::run(c, problem, seed),
            Algorithm::Sa(c) => sa_run(c, problem, seed),
            Algorithm::Pso(c) => pso_run(c, problem, seed),
            Algorithm::Hs(c) => hs_run(c, problem, seed),
            Algorithm::De(c) => de_run(c, problem, seed),
            Algorithm::Random { budget } => random_search_run(*budget, problem, seed),
        }
    }
}
