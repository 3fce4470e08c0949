//! Geometric V-cycle multigrid for one line system `(I − diag(ξ) T̃) u = f`.
//!
//! Smoothing is weighted Jacobi, restriction is full weighting `(1, 2, 1)/4`,
//! prolongation is linear interpolation (twice the transpose of restriction)
//! and coarse operators are re-discretised: the coefficient is sampled at the
//! coarse points and the coarse mesh width enters `ξ` directly. The coarsest
//! level is solved by dense LU.

mod analysis;
mod cycle;
mod hierarchy;
mod transfer;

pub use analysis::{measure_tgm_contraction, TgmContraction};
pub use cycle::{solve, solve_in_place, v_cycle, v_cycle_in_place, weighted_jacobi};
pub use hierarchy::{LevelOperator, MgWorkspace, MultigridHierarchy};
pub use transfer::{prolong, prolong_into, restrict, restrict_into};

use crate::error::{Error, Result};
use crate::operators::DEFAULT_COARSEST;

/// Weighted Jacobi parameters for the pre- and post-smoothing passes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SmootherConfig {
    pub omega_pre: f64,
    pub omega_post: f64,
    pub pre_sweeps: usize,
    pub post_sweeps: usize,
}

impl Default for SmootherConfig {
    fn default() -> Self {
        Self {
            omega_pre: 1.0,
            omega_post: 0.5,
            pre_sweeps: 1,
            post_sweeps: 1,
        }
    }
}

impl SmootherConfig {
    pub fn validate(&self) -> Result<()> {
        for (name, w) in [
            ("omega_pre", self.omega_pre),
            ("omega_post", self.omega_post),
        ] {
            if !(w > 0.0 && w <= 1.0) {
                return Err(Error::Config(format!("{name} = {w} is outside (0, 1]")));
            }
        }
        if self.pre_sweeps == 0 && self.post_sweeps == 0 {
            return Err(Error::Config(
                "at least one smoothing sweep is required".into(),
            ));
        }
        Ok(())
    }
}

/// Solver settings. `tolerance` bounds `‖r_l‖₂ / ‖r_0‖₂`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MgConfig {
    pub smoother: SmootherConfig,
    pub tolerance: f64,
    pub max_iterations: usize,
    /// Coarsening stops once a level has at most this many interior points.
    pub coarsest: usize,
}

impl Default for MgConfig {
    fn default() -> Self {
        Self {
            smoother: SmootherConfig::default(),
            tolerance: 1e-7,
            max_iterations: 100,
            coarsest: DEFAULT_COARSEST,
        }
    }
}

impl MgConfig {
    pub fn validate(&self) -> Result<()> {
        self.smoother.validate()?;
        if !(self.tolerance > 0.0 && self.tolerance < 1.0) {
            return Err(Error::Config(format!(
                "tolerance {} is outside (0, 1)",
                self.tolerance
            )));
        }
        if self.max_iterations == 0 {
            return Err(Error::Config("max_iterations must be positive".into()));
        }
        if self.coarsest == 0 || self.coarsest > 7 {
            return Err(Error::Config(format!(
                "coarsest size {} is outside 1..=7",
                self.coarsest
            )));
        }
        Ok(())
    }
}

/// Outcome of one [`solve`].
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SolveStats {
    pub iterations: usize,
    /// `‖f − A u‖₂` before the first cycle and after each cycle.
    pub residual_history: Vec<f64>,
    pub converged: bool,
}

impl SolveStats {
    /// Residuals relative to the initial one.
    pub fn relative_history(&self) -> Vec<f64> {
        match self.residual_history.first() {
            Some(&r0) if r0 > 0.0 => self.residual_history.iter().map(|r| r / r0).collect(),
            _ => Vec::new(),
        }
    }
}
