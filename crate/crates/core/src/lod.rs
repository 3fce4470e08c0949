//! Locally one-dimensional time steppers.
//!
//! Each step freezes the directional operators `A_x, A_y, A_z` at the half
//! time `t_{k+1/2}` and reduces the implicit part to batches of independent
//! line systems `(I − A) u = r`, one per grid line along the sweep axis,
//! each solved by multigrid. Lines within a sweep run in parallel.

use std::fmt;
use std::sync::Arc;
use std::time::{Duration, Instant};

use ndarray::{ArrayD, Axis as NdAxis, IxDyn, Zip};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::multigrid::{solve_in_place, MgConfig, MgWorkspace, MultigridHierarchy};
use crate::operators::{
    Axis, BoundaryContribution, DirectionalOperator, GridSpec, HomogeneousDirichlet, StencilLadder,
};
use crate::problems::ManufacturedProblem;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SchemeKind {
    /// Crank–Nicolson in one dimension.
    Cn1d,
    /// Douglas alternating direction in two dimensions.
    Dad2d,
    /// Peaceman–Rachford alternating direction in two dimensions.
    Prad2d,
    /// Douglas alternating direction in three dimensions.
    Dad3d,
}

impl SchemeKind {
    pub fn dimension(self) -> usize {
        match self {
            Self::Cn1d => 1,
            Self::Dad2d | Self::Prad2d => 2,
            Self::Dad3d => 3,
        }
    }
}

impl fmt::Display for SchemeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Cn1d => "CN",
            Self::Dad2d => "D-AD",
            Self::Prad2d => "PR-AD",
            Self::Dad3d => "D-AD",
        })
    }
}

/// Interior values at time level `time_index`.
#[derive(Debug, Clone, PartialEq)]
pub struct SolutionField {
    pub values: ArrayD<f64>,
    pub time_index: usize,
}

impl SolutionField {
    pub fn max_norm(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }
}

/// Multigrid work for one sweep (all lines along one axis).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SweepStats {
    pub axis: Axis,
    pub lines: usize,
    pub total_iterations: usize,
    pub max_iterations: usize,
}

impl SweepStats {
    pub fn mean_iterations(&self) -> f64 {
        if self.lines == 0 {
            0.0
        } else {
            self.total_iterations as f64 / self.lines as f64
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StepReport {
    /// One entry per sweep, in sweep order.
    pub sweeps: Vec<SweepStats>,
    pub wall: Duration,
}

/// Everything a step needs besides the fields and operators.
#[derive(Clone, Copy)]
pub struct StepContext<'a> {
    pub dt: f64,
    /// `t_{k+1/2}`, passed to the boundary hook.
    pub t_half: f64,
    pub mg: &'a MgConfig,
    pub boundary: &'a dyn BoundaryContribution,
}

impl<'a> StepContext<'a> {
    pub fn new(dt: f64, t_half: f64, mg: &'a MgConfig) -> Self {
        Self {
            dt,
            t_half,
            mg,
            boundary: &HomogeneousDirichlet,
        }
    }
}

/// Solves `(I − A) v = rhs` on every line along `A`'s axis, starting each
/// line from `guess`.
pub fn solve_lines(
    op: &DirectionalOperator,
    mut rhs: ArrayD<f64>,
    guess: &ArrayD<f64>,
    ctx: &StepContext<'_>,
) -> Result<(ArrayD<f64>, SweepStats)> {
    for shape in [rhs.shape(), guess.shape()] {
        if shape != op.shape() {
            return Err(Error::ShapeMismatch {
                expected: op.shape().to_vec(),
                actual: shape.to_vec(),
            });
        }
    }
    ctx.mg.validate()?;
    ctx.boundary.add_to_rhs(op.axis(), ctx.t_half, &mut rhs);
    let ax = NdAxis(op.axis().index());
    let ladder: &Arc<StencilLadder> = op.ladder();
    let mut out = guess.clone();
    let others: Vec<usize> = (0..op.shape().len())
        .filter(|&k| k != ax.index())
        .map(|k| op.shape()[k])
        .collect();
    let lanes: Vec<_> = out
        .lanes_mut(ax)
        .into_iter()
        .zip(rhs.lanes(ax))
        .zip(op.xi().lanes(ax))
        .enumerate()
        .collect();
    let (lines, total, max) = lanes
        .into_par_iter()
        .map_init(
            || MgWorkspace::new(ladder),
            |ws, (count, ((mut u, f), xi))| -> Result<(usize, usize, usize)> {
                let line_err = |e: Error| Error::LineSolve {
                    axis: op.axis(),
                    line: unravel(count, &others),
                    source: Box::new(e),
                };
                let xi = xi.to_vec();
                let f = f.to_vec();
                let mut v = u.to_vec();
                let h =
                    MultigridHierarchy::from_fine_xi(Arc::clone(ladder), &xi).map_err(line_err)?;
                let stats = solve_in_place(&h, &mut v, &f, ctx.mg, ws).map_err(line_err)?;
                u.iter_mut().zip(v).for_each(|(a, b)| *a = b);
                Ok((1, stats.iterations, stats.iterations))
            },
        )
        .try_reduce(
            || (0, 0, 0),
            |a, b| Ok((a.0 + b.0, a.1 + b.1, a.2.max(b.2))),
        )?;
    Ok((
        out,
        SweepStats {
            axis: op.axis(),
            lines,
            total_iterations: total,
            max_iterations: max,
        },
    ))
}

/// Row-major multi-index of the `count`-th line.
fn unravel(mut count: usize, shape: &[usize]) -> Vec<usize> {
    let mut idx = vec![0; shape.len()];
    for (i, &n) in idx.iter_mut().zip(shape).rev() {
        *i = count % n;
        count /= n;
    }
    idx
}

fn check_field(
    u: &SolutionField,
    forcing: &ArrayD<f64>,
    ops: &[&DirectionalOperator],
) -> Result<()> {
    let dim = ops.len();
    if u.values.ndim() != dim {
        return Err(Error::InvalidArgument(format!(
            "{dim}-dimensional scheme given a {}-dimensional field",
            u.values.ndim()
        )));
    }
    for (k, op) in ops.iter().enumerate() {
        if op.axis().index() != k {
            return Err(Error::InvalidArgument(format!(
                "operator {k} acts along {} instead of axis {k}",
                op.axis()
            )));
        }
        for shape in [u.values.shape(), forcing.shape()] {
            if shape != op.shape() {
                return Err(Error::ShapeMismatch {
                    expected: op.shape().to_vec(),
                    actual: shape.to_vec(),
                });
            }
        }
    }
    Ok(())
}

fn finish(
    u: &SolutionField,
    values: ArrayD<f64>,
    sweeps: Vec<SweepStats>,
    start: Instant,
) -> (SolutionField, StepReport) {
    (
        SolutionField {
            values,
            time_index: u.time_index + 1,
        },
        StepReport {
            sweeps,
            wall: start.elapsed(),
        },
    )
}

/// `(I − A) U^{k+1} = (I + A) U^k + Δt F`.
pub fn cn_step_1d(
    u: &SolutionField,
    a: &DirectionalOperator,
    forcing: &ArrayD<f64>,
    ctx: &StepContext<'_>,
) -> Result<(SolutionField, StepReport)> {
    let start = Instant::now();
    check_field(u, forcing, &[a])?;
    let mut rhs = &u.values + &(forcing * ctx.dt);
    a.apply_add(&u.values, 1.0, &mut rhs)?;
    let (next, s) = solve_lines(a, rhs, &u.values, ctx)?;
    Ok(finish(u, next, vec![s], start))
}

/// Douglas splitting:
/// `(I − A_x) U* = (I + A_x + 2A_y) U^k + Δt F`,
/// `(I − A_y) U^{k+1} = U* − A_y U^k`.
pub fn dad_step_2d(
    u: &SolutionField,
    ax: &DirectionalOperator,
    ay: &DirectionalOperator,
    forcing: &ArrayD<f64>,
    ctx: &StepContext<'_>,
) -> Result<(SolutionField, StepReport)> {
    let start = Instant::now();
    check_field(u, forcing, &[ax, ay])?;
    let ay_u = ay.apply(&u.values)?;
    let mut rhs = &u.values + &(forcing * ctx.dt) + &(&ay_u * 2.0);
    ax.apply_add(&u.values, 1.0, &mut rhs)?;
    let (star, sx) = solve_lines(ax, rhs, &u.values, ctx)?;
    let (next, sy) = solve_lines(ay, star - ay_u, &u.values, ctx)?;
    Ok(finish(u, next, vec![sx, sy], start))
}

/// Peaceman–Rachford splitting:
/// `(I − A_x) U* = (I + A_y) U^k + (Δt/2) F`,
/// `(I − A_y) U^{k+1} = (I + A_x) U* + (Δt/2) F`.
pub fn prad_step_2d(
    u: &SolutionField,
    ax: &DirectionalOperator,
    ay: &DirectionalOperator,
    forcing: &ArrayD<f64>,
    ctx: &StepContext<'_>,
) -> Result<(SolutionField, StepReport)> {
    let start = Instant::now();
    check_field(u, forcing, &[ax, ay])?;
    let half = forcing * (0.5 * ctx.dt);
    let mut rhs = &u.values + &half;
    ay.apply_add(&u.values, 1.0, &mut rhs)?;
    let (star, sx) = solve_lines(ax, rhs, &u.values, ctx)?;
    let mut rhs = &star + &half;
    ax.apply_add(&star, 1.0, &mut rhs)?;
    let (next, sy) = solve_lines(ay, rhs, &u.values, ctx)?;
    Ok(finish(u, next, vec![sx, sy], start))
}

/// Douglas splitting in three dimensions:
/// `(I − A_x) U¹ = (I + A_x + 2A_y + 2A_z) U^k + Δt F`,
/// `(I − A_y) U² = U¹ − A_y U^k`,
/// `(I − A_z) U^{k+1} = U² − A_z U^k`.
pub fn dad_step_3d(
    u: &SolutionField,
    ax: &DirectionalOperator,
    ay: &DirectionalOperator,
    az: &DirectionalOperator,
    forcing: &ArrayD<f64>,
    ctx: &StepContext<'_>,
) -> Result<(SolutionField, StepReport)> {
    let start = Instant::now();
    check_field(u, forcing, &[ax, ay, az])?;
    let ay_u = ay.apply(&u.values)?;
    let az_u = az.apply(&u.values)?;
    let mut rhs = &u.values + &(forcing * ctx.dt) + &((&ay_u + &az_u) * 2.0);
    ax.apply_add(&u.values, 1.0, &mut rhs)?;
    let (u1, sx) = solve_lines(ax, rhs, &u.values, ctx)?;
    let (u2, sy) = solve_lines(ay, u1 - ay_u, &u.values, ctx)?;
    let (next, sz) = solve_lines(az, u2 - az_u, &u.values, ctx)?;
    Ok(finish(u, next, vec![sx, sy, sz], start))
}

/// Totals over a whole run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunReport {
    pub steps: usize,
    pub line_solves: usize,
    pub total_iterations: usize,
    pub max_iterations: usize,
    /// Wall time of the time loop, excluding ladder construction.
    pub wall: Duration,
}

impl RunReport {
    /// Mean multigrid iterations per line solve.
    pub fn mean_iterations(&self) -> f64 {
        if self.line_solves == 0 {
            0.0
        } else {
            self.total_iterations as f64 / self.line_solves as f64
        }
    }
}

/// Integrates `problem` from its initial condition to `T` on `grid`.
pub fn run(
    problem: &ManufacturedProblem,
    grid: &GridSpec,
    scheme: SchemeKind,
    cfg: &MgConfig,
) -> Result<(SolutionField, RunReport)> {
    run_with_boundary(problem, grid, scheme, cfg, &HomogeneousDirichlet)
}

pub fn run_with_boundary(
    problem: &ManufacturedProblem,
    grid: &GridSpec,
    scheme: SchemeKind,
    cfg: &MgConfig,
    boundary: &dyn BoundaryContribution,
) -> Result<(SolutionField, RunReport)> {
    run_observed(problem, grid, scheme, cfg, boundary, &mut |_, _| {})
}

/// As [`run_with_boundary`], calling `on_step` after every step with the new
/// field. Observer time is included in the reported wall time.
pub fn run_observed(
    problem: &ManufacturedProblem,
    grid: &GridSpec,
    scheme: SchemeKind,
    cfg: &MgConfig,
    boundary: &dyn BoundaryContribution,
    on_step: &mut dyn FnMut(&SolutionField, &StepReport),
) -> Result<(SolutionField, RunReport)> {
    let dim = problem.dimension();
    if scheme.dimension() != dim || grid.dim() != dim {
        return Err(Error::Config(format!(
            "scheme {scheme} is {}-dimensional but the problem is {dim}-dimensional on a {}-dimensional grid",
            scheme.dimension(),
            grid.dim()
        )));
    }
    grid.require_dyadic()?;
    cfg.validate()?;
    let ladders = (0..dim)
        .map(|k| {
            StencilLadder::new(problem.orders()[k], grid.axes()[k].interior(), cfg.coarsest)
                .map(Arc::new)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut u = SolutionField {
        values: grid.sample(problem.exact(), 0.0),
        time_index: 0,
    };
    let mut report = RunReport {
        steps: 0,
        line_solves: 0,
        total_iterations: 0,
        max_iterations: 0,
        wall: Duration::ZERO,
    };
    let start = Instant::now();
    for k in 0..grid.steps() {
        let t_half = grid.time(k) + 0.5 * grid.dt();
        let ops = (0..dim)
            .map(|a| {
                let axis = Axis::from_index(a).expect("dim <= 3");
                DirectionalOperator::with_ladder(
                    grid,
                    axis,
                    Arc::clone(&ladders[a]),
                    &problem.coefficients()[a],
                    t_half,
                )
            })
            .collect::<Result<Vec<_>>>()?;
        let forcing = grid.sample(problem.forcing(), t_half);
        let ctx = StepContext {
            dt: grid.dt(),
            t_half,
            mg: cfg,
            boundary,
        };
        let (next, step) = match scheme {
            SchemeKind::Cn1d => cn_step_1d(&u, &ops[0], &forcing, &ctx)?,
            SchemeKind::Dad2d => dad_step_2d(&u, &ops[0], &ops[1], &forcing, &ctx)?,
            SchemeKind::Prad2d => prad_step_2d(&u, &ops[0], &ops[1], &forcing, &ctx)?,
            SchemeKind::Dad3d => dad_step_3d(&u, &ops[0], &ops[1], &ops[2], &forcing, &ctx)?,
        };
        for s in &step.sweeps {
            report.line_solves += s.lines;
            report.total_iterations += s.total_iterations;
            report.max_iterations = report.max_iterations.max(s.max_iterations);
        }
        report.steps += 1;
        on_step(&next, &step);
        u = next;
    }
    report.wall = start.elapsed();
    Ok((u, report))
}

/// `max |u − exact(·, t)|` over interior points.
pub fn max_error(grid: &GridSpec, u: &SolutionField, problem: &ManufacturedProblem, t: f64) -> f64 {
    let exact = grid.sample(problem.exact(), t);
    Zip::from(&u.values)
        .and(&exact)
        .fold(0.0, |m: f64, a, b| m.max((a - b).abs()))
}

/// Zero field on `grid`'s interior.
pub fn zero_field(grid: &GridSpec) -> SolutionField {
    SolutionField {
        values: ArrayD::zeros(IxDyn(&grid.interior_shape())),
        time_index: 0,
    }
}
