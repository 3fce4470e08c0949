//! Second-order shifted Grünwald weights for the Riesz derivative.
//!
//! The left and right Riemann–Liouville derivatives of order `ν ∈ (1, 2)` are
//! approximated on a uniform mesh by
//!
//! ```text
//! δ_{ν,+} u_i = 1/(Γ(4−ν) Δx^ν) Σ_{m=0}^{i+1} g_m u_{i−m+1}
//! ```
//!
//! with the weights `g_m` of [`weight`]. Adding both one-sided sums gives a
//! symmetric Toeplitz row whose first column is
//! `(2g₁, g₀+g₂, g₃, g₄, …)`, see [`riesz_row_weights`].

use std::f64::consts::PI;

use statrs::function::gamma::gamma;

use crate::error::{Error, Result};

/// Order `ν` of a Riesz derivative, restricted to `(1, 2]`.
///
/// `ν = 2` is admitted for the classical-limit checks; the schemes themselves
/// are designed for `1 < ν < 2`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct FractionalOrder(f64);

impl FractionalOrder {
    pub fn new(nu: f64) -> Result<Self> {
        if nu.is_finite() && nu > 1.0 && nu <= 2.0 {
            Ok(Self(nu))
        } else {
            Err(Error::InvalidOrder(nu))
        }
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }
}

impl std::fmt::Display for FractionalOrder {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

// Below this index the five-term difference is evaluated directly; above it
// the binomial series of the fourth central difference takes over.
const SERIES_START: usize = 6;

/// Weight `g_m` for order `ν`.
///
/// For large `m` the defining five-term difference
/// `(m+1)^p − 4m^p + 6(m−1)^p − 4(m−2)^p + (m−3)^p`, `p = 3 − ν`, loses all
/// significant digits to cancellation. It is the fourth central difference of
/// `s ↦ s^p` at `c = m − 1`, so we evaluate instead
///
/// ```text
/// c^p Σ_{k = 4, 6, …} C(p, k) (2^{k+1} − 8) c^{−k}
/// ```
///
/// which converges geometrically with ratio `(2/c)²`.
pub fn weight(nu: FractionalOrder, m: usize) -> f64 {
    let nu = nu.value();
    let p = 3.0 - nu;
    match m {
        0 => 1.0,
        1 => -4.0 + 2f64.powf(p),
        2 => 6.0 - 2f64.powf(5.0 - nu) + 3f64.powf(p),
        m if m < SERIES_START => {
            let pw = |s: usize| (s as f64).powf(p);
            // smallest magnitudes first
            ((pw(m - 3) - 4.0 * pw(m - 2)) + (pw(m + 1) - 4.0 * pw(m))) + 6.0 * pw(m - 1)
        }
        m => fourth_difference_series(p, (m - 1) as f64),
    }
}

fn fourth_difference_series(p: f64, c: f64) -> f64 {
    let inv_c = 1.0 / c;
    // C(p, k) built incrementally; k = 0..3 only feed the recurrence.
    let mut binom = 1.0;
    for k in 1..=4 {
        binom *= (p - (k - 1) as f64) / k as f64;
    }
    let mut c_pow = inv_c.powi(4);
    let mut two_pow = 32.0; // 2^{k+1}
    let mut sum = 0.0;
    let mut k = 4usize;
    loop {
        let term = binom * (two_pow - 8.0) * c_pow;
        sum += term;
        if term.abs() <= 1e-18 * sum.abs() || k > 200 {
            break;
        }
        binom *= (p - k as f64) / (k + 1) as f64;
        binom *= (p - (k + 1) as f64) / (k + 2) as f64;
        c_pow *= inv_c * inv_c;
        two_pow *= 4.0;
        k += 2;
    }
    c.powf(p) * sum
}

/// The sequence `g_0, …, g_{len−1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct StencilWeights {
    nu: FractionalOrder,
    g: Vec<f64>,
}

impl StencilWeights {
    pub fn order(&self) -> FractionalOrder {
        self.nu
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.g
    }

    pub fn len(&self) -> usize {
        self.g.len()
    }

    pub fn is_empty(&self) -> bool {
        self.g.is_empty()
    }
}

impl std::ops::Index<usize> for StencilWeights {
    type Output = f64;

    fn index(&self, m: usize) -> &f64 {
        &self.g[m]
    }
}

/// Computes `count` weights `g_0 … g_{count−1}`.
pub fn grunwald_weights(nu: FractionalOrder, count: usize) -> Result<StencilWeights> {
    if count == 0 {
        return Err(Error::InvalidArgument(
            "weight count must be positive".into(),
        ));
    }
    let g = (0..count).map(|m| weight(nu, m)).collect();
    Ok(StencilWeights { nu, g })
}

/// First column `w` of the symmetric Toeplitz matrix `T̃` for `n` interior points:
/// `w_0 = 2g₁`, `w_1 = g₀ + g₂`, `w_k = g_{k+1}` for `k ≥ 2`.
#[derive(Debug, Clone, PartialEq)]
pub struct RieszRowWeights {
    nu: FractionalOrder,
    w: Vec<f64>,
}

impl RieszRowWeights {
    pub fn order(&self) -> FractionalOrder {
        self.nu
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.w
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.w
    }

    pub fn len(&self) -> usize {
        self.w.len()
    }

    pub fn is_empty(&self) -> bool {
        self.w.is_empty()
    }

    /// Diagonal entry `2g₁`.
    pub fn diagonal(&self) -> f64 {
        self.w[0]
    }
}

/// Builds the length-`n` first column of `T̃`.
///
/// Multigrid coarse levels reuse this for `n = 1`, so any positive `n` is
/// accepted even though fine grids always have `n ≥ 3`.
pub fn riesz_row_weights(nu: FractionalOrder, n: usize) -> Result<RieszRowWeights> {
    if n == 0 {
        return Err(Error::InvalidArgument("row length must be positive".into()));
    }
    let g = grunwald_weights(nu, (n + 1).max(3))?;
    let w = (0..n)
        .map(|k| match k {
            0 => 2.0 * g[1],
            1 => g[0] + g[2],
            k => g[k + 1],
        })
        .collect();
    Ok(RieszRowWeights { nu, w })
}

/// Source of symmetric row weights for a given order and size.
///
/// Only [`ShiftedGrunwald`] ships; other second-order families can plug in
/// here without touching the operators or the solver.
pub trait WeightProvider: Send + Sync {
    fn row_weights(&self, nu: FractionalOrder, n: usize) -> Result<RieszRowWeights>;

    /// `Γ(4 − ν)`-style normalisation that multiplies `Δx^ν` in the scale `ξ`.
    fn normalisation(&self, nu: FractionalOrder) -> f64;
}

/// The weights of [`weight`], normalised by `Γ(4 − ν)`.
#[derive(Debug, Clone, Copy, Default)]
pub struct ShiftedGrunwald;

impl WeightProvider for ShiftedGrunwald {
    fn row_weights(&self, nu: FractionalOrder, n: usize) -> Result<RieszRowWeights> {
        riesz_row_weights(nu, n)
    }

    fn normalisation(&self, nu: FractionalOrder) -> f64 {
        gamma(4.0 - nu.value())
    }
}

/// `κ_ν = 1 / (2 cos(νπ/2))`, negative on `(1, 2]`.
pub fn riesz_coefficient(nu: FractionalOrder) -> f64 {
    1.0 / (2.0 * (nu.value() * PI / 2.0).cos())
}

/// Scale `ξ = −Δt κ_ν c / (2 Γ(4−ν) Δx^ν)` that turns `T̃` into the
/// half-step operator `(Δt/2) c ∂^ν/∂|x|^ν`.
pub fn xi_scale(nu: FractionalOrder, dx: f64, dt: f64, coefficient: f64) -> f64 {
    debug_assert!(dx > 0.0 && dt > 0.0);
    -dt * riesz_coefficient(nu) * coefficient
        / (2.0 * ShiftedGrunwald.normalisation(nu) * dx.powf(nu.value()))
}
