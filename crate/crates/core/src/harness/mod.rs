//! Convergence studies: run a problem on `N = 2^k` for a range of `k`,
//! measure the max-norm error at `T` and the observed rates, and report.

mod config;
mod output;

pub use config::{ProblemKind, RunConfig, SchemeChoice};
pub use output::{
    emit_csv, emit_plot, emit_table, fitted_slope, read_csv, render_plot, CSV_HEADER,
};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lod::{max_error, run};
use crate::problems::ManufacturedProblem;

/// One row of a convergence table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceRow {
    #[serde(rename = "N")]
    pub n: usize,
    pub max_error: f64,
    /// `log₂(e_{N/2} / e_N)`; absent for the first row or after a failed row.
    pub rate: Option<f64>,
    /// Mean multigrid iterations per line solve.
    pub avg_iter: f64,
    /// Wall time of the time loop.
    pub cpu_seconds: f64,
}

/// Rows that completed, plus a diagnostic for each that did not.
#[derive(Debug)]
pub struct StudyResult {
    pub rows: Vec<ConvergenceRow>,
    pub failures: Vec<(usize, Error)>,
}

impl StudyResult {
    pub fn is_success(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Runs the study described by `cfg` on one of the built-in problems.
pub fn run_study(cfg: &RunConfig) -> Result<StudyResult> {
    cfg.validate()?;
    let problem = cfg.problem()?;
    run_study_with(cfg, &problem)
}

/// Runs the study on a caller-supplied problem; `cfg.problem` is ignored
/// apart from the scheme/dimension check.
pub fn run_study_with(cfg: &RunConfig, problem: &ManufacturedProblem) -> Result<StudyResult> {
    cfg.validate_grid()?;
    let scheme = cfg.scheme_kind(problem.dimension())?;
    let mut rows: Vec<ConvergenceRow> = Vec::new();
    let mut failures = Vec::new();
    for k in cfg.kmin..=cfg.kmax {
        let n = 1usize << k;
        let attempt = (|| {
            let grid = problem.grid(n, cfg.time_steps(n))?;
            let (u, report) = run(problem, &grid, scheme, &cfg.mg)?;
            let err = max_error(&grid, &u, problem, problem.final_time());
            Ok::<_, Error>((err, report))
        })();
        match attempt {
            Ok((err, report)) => {
                let rate = rows
                    .last()
                    .filter(|prev| prev.n * 2 == n)
                    .map(|prev| (prev.max_error / err).log2());
                rows.push(ConvergenceRow {
                    n,
                    max_error: err,
                    rate,
                    avg_iter: report.mean_iterations(),
                    cpu_seconds: report.wall.as_secs_f64(),
                });
            }
            Err(e) => failures.push((n, e)),
        }
    }
    Ok(StudyResult { rows, failures })
}
