use super::hierarchy::{LevelOperator, LevelScratch, MgWorkspace, MultigridHierarchy};
use super::transfer::{prolong_into, restrict_into};
use super::{MgConfig, SmootherConfig, SolveStats};
use crate::error::{Error, Result};
use crate::toeplitz::ToeplitzWorkspace;

/// `sweeps` passes of `u ← u + ω D⁻¹ (f − A u)`. `r` is scratch.
pub fn weighted_jacobi(
    op: &LevelOperator<'_>,
    u: &mut [f64],
    f: &[f64],
    omega: f64,
    sweeps: usize,
    r: &mut [f64],
    ws: &mut ToeplitzWorkspace,
) -> Result<()> {
    if !(omega > 0.0 && omega <= 1.0) {
        return Err(Error::InvalidArgument(format!(
            "omega {omega} is outside (0, 1]"
        )));
    }
    for len in [u.len(), f.len(), r.len()] {
        if len != op.len() {
            return Err(Error::LengthMismatch {
                expected: op.len(),
                actual: len,
            });
        }
    }
    jacobi(op, u, f, omega, sweeps, r, ws);
    Ok(())
}

fn jacobi(
    op: &LevelOperator<'_>,
    u: &mut [f64],
    f: &[f64],
    omega: f64,
    sweeps: usize,
    r: &mut [f64],
    ws: &mut ToeplitzWorkspace,
) {
    for _ in 0..sweeps {
        op.residual(u, f, r, ws);
        for (i, (u, r)) in u.iter_mut().zip(r.iter()).enumerate() {
            *u += omega * r / op.diagonal(i);
        }
    }
}

fn cycle(
    h: &MultigridHierarchy,
    level: usize,
    u: &mut [f64],
    f: &[f64],
    cfg: &SmootherConfig,
    scratch: &mut [LevelScratch],
) -> Result<()> {
    if level + 1 == h.depth() {
        return h.coarse_solve(f, u);
    }
    let op = h.level(level);
    let (head, tail) = scratch.split_first_mut().expect("scratch per level");
    jacobi(
        &op,
        u,
        f,
        cfg.omega_pre,
        cfg.pre_sweeps,
        &mut head.residual,
        &mut head.toeplitz,
    );
    op.residual(u, f, &mut head.residual, &mut head.toeplitz);
    restrict_into(&head.residual, &mut head.coarse_f)?;
    head.coarse_u.fill(0.0);
    cycle(h, level + 1, &mut head.coarse_u, &head.coarse_f, cfg, tail)?;
    prolong_into(&head.coarse_u, u)?;
    jacobi(
        &op,
        u,
        f,
        cfg.omega_post,
        cfg.post_sweeps,
        &mut head.residual,
        &mut head.toeplitz,
    );
    Ok(())
}

fn check(h: &MultigridHierarchy, u: &[f64], f: &[f64], ws: &MgWorkspace) -> Result<()> {
    for len in [u.len(), f.len()] {
        if len != h.len() {
            return Err(Error::LengthMismatch {
                expected: h.len(),
                actual: len,
            });
        }
    }
    if !ws.fits(h) {
        return Err(Error::InvalidArgument(
            "workspace was built for another ladder".into(),
        ));
    }
    Ok(())
}

/// One V-cycle applied to `u` in place.
pub fn v_cycle_in_place(
    h: &MultigridHierarchy,
    u: &mut [f64],
    f: &[f64],
    cfg: &SmootherConfig,
    ws: &mut MgWorkspace,
) -> Result<()> {
    check(h, u, f, ws)?;
    cfg.validate()?;
    cycle(h, 0, u, f, cfg, &mut ws.levels)
}

/// One V-cycle from the initial guess `u0`.
pub fn v_cycle(
    h: &MultigridHierarchy,
    u0: &[f64],
    f: &[f64],
    cfg: &SmootherConfig,
    ws: &mut MgWorkspace,
) -> Result<Vec<f64>> {
    let mut u = u0.to_vec();
    v_cycle_in_place(h, &mut u, f, cfg, ws)?;
    Ok(u)
}

/// Repeats V-cycles on `u` until `‖r‖₂ ≤ tol · ‖r_0‖₂`. A zero initial
/// residual returns immediately with zero iterations.
pub fn solve_in_place(
    h: &MultigridHierarchy,
    u: &mut [f64],
    f: &[f64],
    cfg: &MgConfig,
    ws: &mut MgWorkspace,
) -> Result<SolveStats> {
    check(h, u, f, ws)?;
    cfg.validate()?;
    let op = h.level(0);
    let r0 = {
        let top = &mut ws.levels[0];
        op.residual(u, f, &mut top.residual, &mut top.toeplitz)
    };
    let mut stats = SolveStats {
        iterations: 0,
        residual_history: vec![r0],
        converged: true,
    };
    if r0 == 0.0 {
        return Ok(stats);
    }
    if !r0.is_finite() {
        return Err(Error::InvalidArgument("non-finite initial residual".into()));
    }
    loop {
        cycle(h, 0, u, f, &cfg.smoother, &mut ws.levels)?;
        stats.iterations += 1;
        let top = &mut ws.levels[0];
        let r = op.residual(u, f, &mut top.residual, &mut top.toeplitz);
        stats.residual_history.push(r);
        if r <= cfg.tolerance * r0 {
            return Ok(stats);
        }
        if stats.iterations >= cfg.max_iterations || !r.is_finite() {
            return Err(Error::NotConverged {
                iterations: stats.iterations,
                history: stats.relative_history(),
            });
        }
    }
}

pub fn solve(
    h: &MultigridHierarchy,
    u0: &[f64],
    f: &[f64],
    cfg: &MgConfig,
    ws: &mut MgWorkspace,
) -> Result<(Vec<f64>, SolveStats)> {
    let mut u = u0.to_vec();
    let stats = solve_in_place(h, &mut u, f, cfg, ws)?;
    Ok((u, stats))
}
