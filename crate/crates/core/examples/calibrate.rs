//! Reference runs behind `calibration.toml`. Prints the observed medians;
//! thresholds are pinned at ten times these values.

use optbench_core::baselines::{pso_run, random_search_run, PsoConfig};
use optbench_core::gewa::{self, GewaConfig};
use optbench_core::harness::stats::median;
use optbench_core::problem::by_name;

fn main() -> optbench_core::Result<()> {
    let seeds: Vec<u64> = (1..=25).collect();
    let sphere = by_name::<f64>("sphere", 5)?;
    let rastrigin = by_name::<f64>("rastrigin", 5)?;

    let gewa_cfg = |alpha: f64, generations: usize| GewaConfig {
        n: 20,
        alpha,
        step_ratio: 0.01,
        max_generations: generations,
        ..GewaConfig::default()
    };
    let med = |f: &dyn Fn(u64) -> f64| median(&seeds.iter().map(|&s| f(s)).collect::<Vec<_>>()).unwrap();

    let g500 = med(&|s| gewa::run(&gewa_cfg(0.5, 500), &sphere, s).unwrap().best_fitness);
    println!("gewa sphere:5 500 generations median = {g500:e}");

    let pso = PsoConfig {
        swarm_size: 20,
        inertia: 0.7,
        cognitive: 1.5,
        social: 1.5,
        max_generations: 500,
        ..PsoConfig::default()
    };
    let p500 = med(&|s| pso_run(&pso, &sphere, s).unwrap().best_fitness);
    println!("pso sphere:5 500 generations median = {p500:e}");

    for (name, problem) in [("sphere", &sphere), ("rastrigin", &rastrigin)] {
        for alpha in [0.0, 0.25, 0.5, 0.7, 1.0] {
            let m = med(&|s| gewa::run(&gewa_cfg(alpha, 19_980), problem, s).unwrap().best_fitness);
            println!("gewa {name}:5 budget 20000 alpha {alpha} median = {m:e}");
        }
        let r = med(&|s| random_search_run(20_000, problem, s).unwrap().best_fitness);
        println!("random {name}:5 budget 20000 median = {r:e}");
    }
    for alpha in [0.0, 0.5, 1.0] {
        let m = med(&|s| gewa::run(&gewa_cfg(alpha, 500), &sphere, s).unwrap().best_fitness);
        println!("gewa sphere:5 500 generations alpha {alpha} median = {m:e}");
    }
    Ok(())
}
