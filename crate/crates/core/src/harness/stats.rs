use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::harness::experiment::RunRecord;
use crate::problem;

/// A run succeeds when `final_best ≤ known optimum + tolerance`.
pub const DEFAULT_SUCCESS_TOLERANCE: f64 = 1e-2;

/// Order statistics of `final_best` for one (algorithm, problem, dim) cell.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellSummary {
    pub algorithm: String,
    pub problem: String,
    pub dim: usize,
    pub runs: usize,
    pub min: f64,
    pub median: f64,
    pub mean: f64,
    /// Sample standard deviation (n − 1); zero for a single run.
    pub std: f64,
    pub max: f64,
    /// Absent when the problem has no known optimum.
    pub success_rate: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SummaryStats {
    pub cells: Vec<CellSummary>,
}

impl SummaryStats {
    pub fn get(&self, algorithm: &str, problem: &str, dim: usize) -> Option<&CellSummary> {
        self.cells.iter().find(|c| c.algorithm == algorithm && c.problem == problem && c.dim == dim)
    }
}

pub fn summarize(records: &[RunRecord]) -> Result<SummaryStats> {
    summarize_with_tolerance(records, DEFAULT_SUCCESS_TOLERANCE)
}

pub fn summarize_with_tolerance(records: &[RunRecord], tolerance: f64) -> Result<SummaryStats> {
    if records.is_empty() {
        return Err(Error::input("cannot summarize an empty record set"));
    }
    let mut groups: BTreeMap<(&str, &str, usize), Vec<f64>> = BTreeMap::new();
    for r in records {
        groups.entry((&r.algorithm, &r.problem, r.dim)).or_default().push(r.final_best);
    }
    let cells = groups
        .into_iter()
        .map(|((algorithm, problem_name, dim), mut finals)| {
            finals.sort_by(f64::total_cmp);
            let n = finals.len();
            let mean = finals.iter().sum::<f64>() / n as f64;
            let std = if n > 1 {
                (finals.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1) as f64).sqrt()
            } else {
                0.0
            };
            let success_rate = problem::by_name::<f64>(problem_name, dim).ok().and_then(|p| {
                let target = p.known_optimum()?.value + tolerance;
                Some(finals.iter().filter(|&&v| v <= target).count() as f64 / n as f64)
            });
            CellSummary {
                algorithm: algorithm.to_string(),
                problem: problem_name.to_string(),
                dim,
                runs: n,
                min: finals[0],
                median: median_sorted(&finals),
                mean,
                std,
                max: finals[n - 1],
                success_rate,
            }
        })
        .collect();
    Ok(SummaryStats { cells })
}

/// Median of a sorted, non-empty slice; even sizes average the two middle values.
pub fn median_sorted(sorted: &[f64]) -> f64 {
    let n = sorted.len();
    if n % 2 == 1 {
        sorted[n / 2]
    } else {
        (sorted[n / 2 - 1] + sorted[n / 2]) / 2.0
    }
}

/// Median of an unsorted sample.
pub fn median(values: &[f64]) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    Some(median_sorted(&v))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rec(final_best: f64) -> RunRecord {
        RunRecord {
            algorithm: "gewa".into(),
            problem: "sphere".into(),
            dim: 2,
            seed: 0,
            final_best,
            evaluations: 10,
            wall_time: 0.0,
            trace: vec![],
        }
    }

    #[test]
    fn medians() {
        let s = summarize(&[rec(3.0), rec(1.0), rec(2.0)]).unwrap();
        assert_eq!(s.cells[0].median, 2.0);
        let s = summarize(&[rec(1.0), rec(3.0)]).unwrap();
        assert_eq!(s.cells[0].median, 2.0);
        assert_eq!(median(&[]), None);
    }

    #[test]
    fn single_record() {
        let s = summarize(&[rec(0.25)]).unwrap();
        let c = &s.cells[0];
        assert_eq!((c.min, c.median, c.mean, c.max, c.std), (0.25, 0.25, 0.25, 0.25, 0.0));
        assert_eq!(c.success_rate, Some(0.0));
    }

    #[test]
    fn success_rate_and_grouping() {
        let mut other = rec(0.001);
        other.algorithm = "de".into();
        let mut unknown = rec(5.0);
        unknown.problem = "custom".into();
        let s = summarize(&[rec(0.005), rec(0.5), other, unknown]).unwrap();
        assert_eq!(s.cells.len(), 3);
        assert_eq!(s.get("gewa", "sphere", 2).unwrap().success_rate, Some(0.5));
        assert_eq!(s.get("de", "sphere", 2).unwrap().success_rate, Some(1.0));
        assert_eq!(s.get("gewa", "custom", 2).unwrap().success_rate, None);
    }

    #[test]
    fn empty_rejected() {
        assert!(summarize(&[]).is_err());
    }
}
