use std::sync::Arc;

use nalgebra::{DMatrix, DVector, Dyn, LU};

use crate::error::{Error, Result};
use crate::operators::{AxisStencil, StencilLadder};
use crate::toeplitz::{CirculantSpectrum, ToeplitzWorkspace};

/// `A_l = I − diag(ξ_l) T̃_l` on one level.
#[derive(Clone, Copy)]
pub struct LevelOperator<'a> {
    stencil: &'a AxisStencil,
    xi: &'a [f64],
}

impl<'a> LevelOperator<'a> {
    pub fn new(stencil: &'a AxisStencil, xi: &'a [f64]) -> Result<Self> {
        if stencil.len() != xi.len() {
            return Err(Error::LengthMismatch {
                expected: stencil.len(),
                actual: xi.len(),
            });
        }
        Ok(Self { stencil, xi })
    }

    pub fn len(&self) -> usize {
        self.xi.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xi.is_empty()
    }

    pub fn xi(&self) -> &'a [f64] {
        self.xi
    }

    pub fn stencil(&self) -> &'a AxisStencil {
        self.stencil
    }

    /// `out = A v`.
    pub fn apply(&self, v: &[f64], out: &mut [f64], ws: &mut ToeplitzWorkspace) {
        self.stencil.spectrum().matvec_with(v.iter().copied(), ws);
        for (((o, t), x), v) in out
            .iter_mut()
            .zip(CirculantSpectrum::result(ws))
            .zip(self.xi)
            .zip(v)
        {
            *o = v - x * t;
        }
    }

    /// `r = f − A u`; returns `‖r‖₂`.
    pub fn residual(&self, u: &[f64], f: &[f64], r: &mut [f64], ws: &mut ToeplitzWorkspace) -> f64 {
        self.stencil.spectrum().matvec_with(u.iter().copied(), ws);
        let mut sq = 0.0;
        for ((((r, t), x), u), f) in r
            .iter_mut()
            .zip(CirculantSpectrum::result(ws))
            .zip(self.xi)
            .zip(u)
            .zip(f)
        {
            *r = f - (u - x * t);
            sq += *r * *r;
        }
        sq.sqrt()
    }

    /// `A_ii = 1 − ξ_i w_0`.
    pub fn diagonal(&self, i: usize) -> f64 {
        1.0 - self.xi[i] * self.stencil.diagonal()
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        let w = self.stencil.weights().as_slice();
        let n = self.len();
        DMatrix::from_fn(n, n, |i, j| {
            let d = if i == j { 1.0 } else { 0.0 };
            d - self.xi[i] * w[i.abs_diff(j)]
        })
    }
}

/// Per-line multigrid data: coefficient on every level plus the factored
/// coarsest matrix. Stencils are shared through the ladder.
pub struct MultigridHierarchy {
    ladder: Arc<StencilLadder>,
    xi: Vec<Vec<f64>>,
    coarse: LU<f64, Dyn, Dyn>,
}

impl MultigridHierarchy {
    /// Coarse coefficients from the fine one: the coefficient at a coarse
    /// point is the one at the coincident fine point, and the mesh width
    /// doubles, so `ξ_{l+1}[j] = ξ_l[2j + 1] · 2^{−ν}`.
    pub fn from_fine_xi(ladder: Arc<StencilLadder>, xi: &[f64]) -> Result<Self> {
        let factor = 2f64.powf(-ladder.order().value());
        let mut levels = vec![xi.to_vec()];
        for stencil in &ladder.levels()[1..] {
            let prev = levels.last().expect("nonempty");
            let next = (0..stencil.len())
                .map(|j| prev[2 * j + 1] * factor)
                .collect();
            levels.push(next);
        }
        Self::from_levels(ladder, levels)
    }

    /// Explicit coefficients per level, finest first.
    pub fn from_levels(ladder: Arc<StencilLadder>, xi: Vec<Vec<f64>>) -> Result<Self> {
        if xi.len() != ladder.depth() {
            return Err(Error::LengthMismatch {
                expected: ladder.depth(),
                actual: xi.len(),
            });
        }
        for (stencil, x) in ladder.levels().iter().zip(&xi) {
            if stencil.len() != x.len() {
                return Err(Error::LengthMismatch {
                    expected: stencil.len(),
                    actual: x.len(),
                });
            }
        }
        let last = ladder.depth() - 1;
        let coarse = LevelOperator::new(&ladder.levels()[last], &xi[last])?
            .to_dense()
            .lu();
        Ok(Self { ladder, xi, coarse })
    }

    pub fn depth(&self) -> usize {
        self.xi.len()
    }

    pub fn len(&self) -> usize {
        self.xi[0].len()
    }

    pub fn is_empty(&self) -> bool {
        self.xi[0].is_empty()
    }

    pub fn ladder(&self) -> &Arc<StencilLadder> {
        &self.ladder
    }

    pub fn xi(&self, level: usize) -> &[f64] {
        &self.xi[level]
    }

    pub fn level(&self, level: usize) -> LevelOperator<'_> {
        LevelOperator {
            stencil: &self.ladder.levels()[level],
            xi: &self.xi[level],
        }
    }

    /// Exact solve on the coarsest level.
    pub(crate) fn coarse_solve(&self, f: &[f64], u: &mut [f64]) -> Result<()> {
        let sol = self
            .coarse
            .solve(&DVector::from_column_slice(f))
            .ok_or_else(|| Error::InvalidArgument("coarsest operator is singular".into()))?;
        u.copy_from_slice(sol.as_slice());
        Ok(())
    }
}

pub(crate) struct LevelScratch {
    pub(crate) toeplitz: ToeplitzWorkspace,
    pub(crate) residual: Vec<f64>,
    pub(crate) coarse_u: Vec<f64>,
    pub(crate) coarse_f: Vec<f64>,
}

/// Scratch for one thread's V-cycles on a given ladder. Reusable across
/// lines and time steps.
pub struct MgWorkspace {
    pub(crate) levels: Vec<LevelScratch>,
}

impl MgWorkspace {
    pub fn new(ladder: &StencilLadder) -> Self {
        let stencils = ladder.levels();
        let levels = stencils
            .iter()
            .enumerate()
            .map(|(l, s)| {
                let coarse = stencils.get(l + 1).map_or(0, AxisStencil::len);
                LevelScratch {
                    toeplitz: s.spectrum().workspace(),
                    residual: vec![0.0; s.len()],
                    coarse_u: vec![0.0; coarse],
                    coarse_f: vec![0.0; coarse],
                }
            })
            .collect();
        Self { levels }
    }

    pub(crate) fn fits(&self, h: &MultigridHierarchy) -> bool {
        self.levels.len() == h.depth() && self.levels[0].residual.len() == h.len()
    }
}
