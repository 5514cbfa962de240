//! Parallel evaluation of independent grid points with deterministic row order.

use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;

use crate::error::{Error, Result};

use super::config::validate_grid;
use super::ScenarioRow;

/// Environment variable overriding the number of sweep workers.
pub const WORKERS_ENV: &str = "IMPNEG_WORKERS";

/// Called once per completed point with `(grid index, completed, total)`.
pub type Progress<'a> = &'a (dyn Fn(usize, usize, usize) + Sync);

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SweepEngine {
    workers: Option<usize>,
}

impl SweepEngine {
    /// Machine parallelism.
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_workers(workers: usize) -> Self {
        Self {
            workers: Some(workers.max(1)),
        }
    }

    /// Honors `IMPNEG_WORKERS` when it holds a positive integer.
    pub fn from_env() -> Self {
        match std::env::var(WORKERS_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
        {
            Some(n) if n > 0 => Self::with_workers(n),
            _ => Self::new(),
        }
    }

    pub fn workers(&self) -> Option<usize> {
        self.workers
    }

    /// Evaluates `point(index, value)` for every grid value. Rows come back in
    /// grid order; the first failing index (in grid order) aborts the sweep.
    pub fn run<F>(
        &self,
        variable: &str,
        grid: &[f64],
        point: F,
        progress: Option<Progress<'_>>,
    ) -> Result<Vec<ScenarioRow>>
    where
        F: Fn(usize, f64) -> Result<ScenarioRow> + Sync,
    {
        validate_grid(variable, grid)?;
        let done = AtomicUsize::new(0);
        let total = grid.len();
        let eval = |(index, &value): (usize, &f64)| {
            let row = point(index, value);
            let completed = done.fetch_add(1, Ordering::SeqCst) + 1;
            if let Some(report) = progress {
                report(index, completed, total);
            }
            row
        };

        let results: Vec<Result<ScenarioRow>> = match self.workers {
            Some(1) => grid.iter().enumerate().map(eval).collect(),
            Some(n) => rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| Error::param("workers", e.to_string()))?
                .install(|| grid.par_iter().enumerate().map(eval).collect()),
            None => grid.par_iter().enumerate().map(eval).collect(),
        };

        results
            .into_iter()
            .enumerate()
            .map(|(index, row)| {
                row.map_err(|source| Error::SweepPoint {
                    index,
                    variable: variable.to_string(),
                    value: grid[index],
                    source: Box::new(source),
                })
            })
            .collect()
    }
}
