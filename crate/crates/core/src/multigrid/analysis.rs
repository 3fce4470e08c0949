use std::sync::Arc;

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use super::hierarchy::MultigridHierarchy;
use crate::error::{Error, Result};
use crate::operators::StencilLadder;
use crate::stencil::FractionalOrder;

const MAX_DENSE: usize = 1023;

/// Two-grid contraction for a constant-coefficient line operator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TgmContraction {
    /// `ρ(D⁻¹ A)`.
    pub eta0: f64,
    /// `ω (2 − ω η0)`.
    pub sigma: f64,
    /// `√(1 − 2σ/5)`.
    pub bound: f64,
    /// Largest observed `‖M e‖_A / ‖e‖_A` over the random trials.
    pub sampled: f64,
    /// `‖M‖_A` computed exactly.
    pub operator_norm: f64,
}

/// Dense analysis of the two-grid iteration `M = S T_c` with one Jacobi
/// post-smoothing sweep of weight `omega` and an exact re-discretised coarse
/// correction `T_c = I − P A_H⁻¹ R A`.
pub fn measure_tgm_contraction(
    nu: FractionalOrder,
    xi: &[f64],
    omega: f64,
    trials: usize,
    seed: u64,
) -> Result<TgmContraction> {
    let n = xi.len();
    if n < 3 || n.is_multiple_of(2) || n > MAX_DENSE {
        return Err(Error::InvalidArgument(format!(
            "two-grid analysis needs an odd size in 3..={MAX_DENSE}, got {n}"
        )));
    }
    if xi.iter().any(|&x| x != xi[0]) || !(xi[0] >= 0.0) {
        return Err(Error::InvalidArgument(
            "two-grid analysis needs a constant nonnegative coefficient".into(),
        ));
    }
    if !(omega > 0.0 && omega <= 1.0) {
        return Err(Error::InvalidArgument(format!(
            "omega {omega} is outside (0, 1]"
        )));
    }
    let ladder = Arc::new(StencilLadder::new(nu, n, (n - 1) / 2)?);
    let h = MultigridHierarchy::from_fine_xi(ladder, xi)?;
    let a = h.level(0).to_dense();
    let a_coarse = h.level(1).to_dense();
    let nc = a_coarse.nrows();

    let mut r = DMatrix::zeros(nc, n);
    for j in 0..nc {
        r[(j, 2 * j)] = 0.25;
        r[(j, 2 * j + 1)] = 0.5;
        r[(j, 2 * j + 2)] = 0.25;
    }
    let p = 2.0 * r.transpose();
    let coarse_inv = a_coarse
        .try_inverse()
        .ok_or_else(|| Error::InvalidArgument("coarse operator is singular".into()))?;
    let identity = DMatrix::<f64>::identity(n, n);
    let tc = &identity - &p * coarse_inv * &r * &a;
    let d_inv = DMatrix::from_diagonal(&a.diagonal().map(|d| 1.0 / d));
    let s = &identity - omega * &d_inv * &a;
    let m = s * tc;

    let eig = SymmetricEigen::new(a.clone());
    if eig.eigenvalues.iter().any(|&l| l <= 0.0) {
        return Err(Error::InvalidArgument(
            "operator is not positive definite".into(),
        ));
    }
    let v = &eig.eigenvectors;
    let half = v * DMatrix::from_diagonal(&eig.eigenvalues.map(f64::sqrt)) * v.transpose();
    let half_inv =
        v * DMatrix::from_diagonal(&eig.eigenvalues.map(|l| 1.0 / l.sqrt())) * v.transpose();
    let similar: DMatrix<f64> = &half * &m * &half_inv;
    let operator_norm = similar.singular_values().max();

    let d_half = a.diagonal().map(|d| 1.0 / d.sqrt());
    let scaled = DMatrix::from_diagonal(&d_half) * &a * DMatrix::from_diagonal(&d_half);
    let eta0 = SymmetricEigen::new(scaled).eigenvalues.max();
    let sigma = omega * (2.0 - omega * eta0);
    let bound = (1.0 - 2.0 * sigma / 5.0).max(0.0).sqrt();

    let mut rng = StdRng::seed_from_u64(seed);
    let mut sampled: f64 = 0.0;
    let energy = |e: &DVector<f64>| e.dot(&(&a * e)).sqrt();
    for _ in 0..trials {
        let e = DVector::from_fn(n, |_, _| rng.gen_range(-1.0..1.0));
        sampled = sampled.max(energy(&(&m * &e)) / energy(&e));
    }

    Ok(TgmContraction {
        eta0,
        sigma,
        bound,
        sampled,
        operator_norm,
    })
}
