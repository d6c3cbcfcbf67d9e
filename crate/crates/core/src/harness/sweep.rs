use std::cmp::Ordering;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::harness::run::{run_trial, LearningCurve, RunConfig};
use crate::learners::Algorithm;

/// Identity of a sweep cell.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CellKey {
    pub algorithm: Algorithm,
    pub alpha: f64,
    pub lambda: f64,
    pub lambda_replay: f64,
}

impl CellKey {
    pub fn of(config: &RunConfig) -> Self {
        CellKey {
            algorithm: config.algorithm,
            alpha: config.hyper.alpha,
            lambda: config.hyper.lambda,
            lambda_replay: config.hyper.lambda_replay,
        }
    }

    fn total_cmp(&self, other: &Self) -> Ordering {
        self.algorithm
            .cmp(&other.algorithm)
            .then(self.lambda.total_cmp(&other.lambda))
            .then(self.lambda_replay.total_cmp(&other.lambda_replay))
            .then(self.alpha.total_cmp(&other.alpha))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CellResult {
    pub key: CellKey,
    pub episodes: usize,
    pub trials: usize,
    /// The learning curve, or the first trial error of a failed cell.
    pub outcome: std::result::Result<LearningCurve, String>,
}

impl CellResult {
    /// Mean RMSE over all episodes and trials; NaN for a failed cell.
    pub fn mean_rmse(&self) -> f64 {
        self.outcome.as_ref().map_or(f64::NAN, LearningCurve::overall_mean)
    }

    pub fn stderr_rmse(&self) -> f64 {
        self.outcome.as_ref().map_or(f64::NAN, LearningCurve::overall_stderr)
    }

    /// Mean RMSE of the last episode across trials; NaN for a failed cell.
    pub fn final_episode_rmse(&self) -> f64 {
        self.outcome
            .as_ref()
            .map_or(f64::NAN, |c| c.mean().last().copied().unwrap_or(f64::NAN))
    }
}

/// Sweep output with cells ordered by (algorithm, λ, λ́, α).
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ResultGrid {
    pub cells: Vec<CellResult>,
}

impl ResultGrid {
    pub fn get(&self, key: &CellKey) -> Option<&CellResult> {
        self.cells.iter().find(|c| c.key == *key)
    }

    /// The successful cell with the lowest mean RMSE among those matching
    /// `algorithm`, `lambda` and `lambda_replay`.
    pub fn best_alpha(&self, algorithm: Algorithm, lambda: f64, lambda_replay: f64) -> Option<&CellResult> {
        self.cells
            .iter()
            .filter(|c| c.key.algorithm == algorithm && c.key.lambda == lambda && c.key.lambda_replay == lambda_replay)
            .filter(|c| c.mean_rmse().is_finite())
            .min_by(|a, b| a.mean_rmse().total_cmp(&b.mean_rmse()))
    }
}

/// Evaluates every cell on a worker pool. Trials are independent work items
/// and each is seeded from its own configuration, so the result does not
/// depend on scheduling or on the order of `grid`.
pub fn sweep(grid: &[RunConfig]) -> Result<ResultGrid> {
    sweep_with(grid, true)
}

pub fn sweep_serial(grid: &[RunConfig]) -> Result<ResultGrid> {
    sweep_with(grid, false)
}

fn sweep_with(grid: &[RunConfig], parallel: bool) -> Result<ResultGrid> {
    if grid.is_empty() {
        return Err(Error::Usage("sweep grid is empty".into()));
    }
    let mut keys: Vec<CellKey> = grid.iter().map(CellKey::of).collect();
    keys.sort_by(CellKey::total_cmp);
    if let Some(w) = keys.windows(2).find(|w| w[0].total_cmp(&w[1]).is_eq()) {
        return Err(Error::Usage(format!("duplicate sweep cell {:?}", w[0])));
    }

    let work: Vec<(usize, usize)> = grid
        .iter()
        .enumerate()
        .flat_map(|(cell, config)| (0..config.trials).map(move |trial| (cell, trial)))
        .collect();
    let run = |&(cell, trial): &(usize, usize)| run_trial(&grid[cell], trial);
    let outcomes: Vec<Result<Vec<f64>>> = if parallel {
        work.par_iter().map(run).collect()
    } else {
        work.iter().map(run).collect()
    };

    let mut outcomes = outcomes.into_iter();
    let mut cells: Vec<CellResult> = grid
        .iter()
        .map(|config| {
            let trials: Vec<Result<Vec<f64>>> = outcomes.by_ref().take(config.trials).collect();
            let outcome = trials
                .into_iter()
                .collect::<Result<Vec<_>>>()
                .map(|per_trial| LearningCurve {
                    algorithm: config.algorithm,
                    hyper: config.hyper,
                    per_trial,
                })
                .map_err(|e| e.to_string());
            CellResult {
                key: CellKey::of(config),
                episodes: config.episodes,
                trials: config.trials,
                outcome,
            }
        })
        .collect();
    cells.sort_by(|a, b| a.key.total_cmp(&b.key));
    Ok(ResultGrid { cells })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::run::run_trials;
    use crate::learners::Hyperparams;

    fn small(algorithm: Algorithm, alpha: f64, lambda: f64) -> RunConfig {
        let mut c = RunConfig::random_walk(algorithm, Hyperparams::new(alpha, 1.0, lambda), 9);
        c.episodes = 3;
        c.trials = 4;
        c
    }

    #[test]
    fn single_cell_equals_run_trials() {
        let config = small(Algorithm::Replan, 0.1, 0.9);
        let grid = sweep(std::slice::from_ref(&config)).unwrap();
        assert_eq!(grid.cells.len(), 1);
        assert_eq!(grid.cells[0].outcome.as_ref().unwrap(), &run_trials(&config).unwrap());
    }

    #[test]
    fn order_and_scheduling_do_not_matter() {
        let mut grid = vec![
            small(Algorithm::Replan, 0.1, 0.9),
            small(Algorithm::TrueOnlineTd, 0.1, 0.9),
            small(Algorithm::Td0, 0.2, 0.0),
            small(Algorithm::Dyna, 0.05, 0.0),
        ];
        let forward = sweep(&grid).unwrap();
        grid.reverse();
        assert_eq!(sweep(&grid).unwrap(), forward);
        assert_eq!(sweep_serial(&grid).unwrap(), forward);
    }

    #[test]
    fn failures_are_recorded_per_cell() {
        let grid = vec![small(Algorithm::Td0, 0.1, 0.0), small(Algorithm::Replan, 1e200, 0.5)];
        let result = sweep(&grid).unwrap();
        let bad = result.cells.iter().find(|c| c.key.algorithm == Algorithm::Replan).unwrap();
        assert!(bad.outcome.is_err());
        assert!(bad.mean_rmse().is_nan());
        let good = result.cells.iter().find(|c| c.key.algorithm == Algorithm::Td0).unwrap();
        assert!(good.mean_rmse().is_finite());
        assert_eq!(result.best_alpha(Algorithm::Replan, 0.5, 1.0), None);
        assert_eq!(result.best_alpha(Algorithm::Td0, 0.0, 1.0).unwrap().key, good.key);
    }

    #[test]
    fn rejects_empty_and_duplicate_grids() {
        assert!(sweep(&[]).is_err());
        let c = small(Algorithm::Td0, 0.1, 0.0);
        assert!(sweep(&[c.clone(), c]).is_err());
    }
}
