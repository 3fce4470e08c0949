//! Grids, coefficient fields and the per-direction half-step operators.
//!
//! Along one axis the discrete operator `(Δt/2) c ∂^ν/∂|x|^ν` restricted to
//! the interior points is `A = diag(ξ) T̃`, with `T̃` the symmetric Toeplitz
//! matrix of [`crate::stencil::riesz_row_weights`] and `ξ` from
//! [`crate::stencil::xi_scale`]. In 2D/3D the same `T̃` acts on every grid line
//! parallel to the axis and `ξ` is stored pointwise over the whole field.
//!
//! Fields are `ndarray` arrays over interior points with array axis `k`
//! matching spatial axis `k` (x, y, z).

use std::fmt;
use std::sync::Arc;

use nalgebra::DMatrix;
use ndarray::parallel::prelude::*;
use ndarray::{ArrayD, Axis as NdAxis, Dimension, IxDyn, Zip};

use crate::error::{Error, Result};
use crate::stencil::{xi_scale, FractionalOrder, RieszRowWeights, ShiftedGrunwald, WeightProvider};
use crate::toeplitz::{embed_circulant, CirculantSpectrum, SymmetricToeplitz, DENSE_LIMIT};

/// Default interior size at which coarsening stops.
pub const DEFAULT_COARSEST: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Option<Axis> {
        Self::ALL.get(i).copied()
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axis::X => "x",
            Axis::Y => "y",
            Axis::Z => "z",
        })
    }
}

/// Uniform mesh `x_i = lower + i Δx`, `i = 0..=cells`, on one axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AxisGrid {
    pub lower: f64,
    pub upper: f64,
    pub cells: usize,
}

impl AxisGrid {
    pub fn new(lower: f64, upper: f64, cells: usize) -> Result<Self> {
        if !(lower.is_finite() && upper.is_finite() && upper > lower) {
            return Err(Error::InvalidArgument(format!(
                "axis bounds ({lower}, {upper}) are not an interval"
            )));
        }
        if cells < 2 {
            return Err(Error::InvalidArgument(format!(
                "{cells} cells leave no interior points"
            )));
        }
        Ok(Self {
            lower,
            upper,
            cells,
        })
    }

    pub fn dx(&self) -> f64 {
        (self.upper - self.lower) / self.cells as f64
    }

    /// Number of interior unknowns, `cells − 1`.
    pub fn interior(&self) -> usize {
        self.cells - 1
    }

    /// Coordinate of mesh point `i` (0 and `cells` are the boundary).
    pub fn coord(&self, i: usize) -> f64 {
        self.lower + i as f64 * self.dx()
    }
}

/// Space-time mesh: one [`AxisGrid`] per dimension plus `steps` uniform time steps.
#[derive(Debug, Clone, PartialEq)]
pub struct GridSpec {
    axes: Vec<AxisGrid>,
    final_time: f64,
    steps: usize,
}

impl GridSpec {
    pub fn new(axes: Vec<AxisGrid>, final_time: f64, steps: usize) -> Result<Self> {
        if axes.is_empty() || axes.len() > 3 {
            return Err(Error::InvalidArgument(format!(
                "{} spatial axes; expected 1 to 3",
                axes.len()
            )));
        }
        if !(final_time.is_finite() && final_time > 0.0) || steps == 0 {
            return Err(Error::InvalidArgument(format!(
                "time interval (0, {final_time}] with {steps} steps"
            )));
        }
        Ok(Self {
            axes,
            final_time,
            steps,
        })
    }

    /// `dim`-dimensional unit cube with `cells` cells per axis.
    pub fn unit_cube(dim: usize, cells: usize, final_time: f64, steps: usize) -> Result<Self> {
        let axis = AxisGrid::new(0.0, 1.0, cells)?;
        Self::new(vec![axis; dim], final_time, steps)
    }

    pub fn dim(&self) -> usize {
        self.axes.len()
    }

    pub fn axes(&self) -> &[AxisGrid] {
        &self.axes
    }

    pub fn axis(&self, axis: Axis) -> &AxisGrid {
        &self.axes[axis.index()]
    }

    pub fn dx(&self, axis: Axis) -> f64 {
        self.axis(axis).dx()
    }

    pub fn dt(&self) -> f64 {
        self.final_time / self.steps as f64
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn final_time(&self) -> f64 {
        self.final_time
    }

    /// `t_k = k Δt`.
    pub fn time(&self, k: usize) -> f64 {
        k as f64 * self.dt()
    }

    pub fn interior_shape(&self) -> Vec<usize> {
        self.axes.iter().map(AxisGrid::interior).collect()
    }

    pub fn interior_len(&self) -> usize {
        self.interior_shape().iter().product()
    }

    /// Physical coordinates of a zero-based interior index; missing axes are 0.
    pub fn point(&self, index: &[usize]) -> [f64; 3] {
        let mut p = [0.0; 3];
        for (k, (&i, axis)) in index.iter().zip(&self.axes).enumerate() {
            p[k] = axis.coord(i + 1);
        }
        p
    }

    /// Every axis must have `2^k` cells with `k ≥ 3`, so that multigrid
    /// coarsening stays nested down to the coarsest level.
    pub fn require_dyadic(&self) -> Result<()> {
        for (k, axis) in self.axes.iter().enumerate() {
            if !axis.cells.is_power_of_two() || axis.cells < 8 {
                return Err(Error::Config(format!(
                    "axis {k} has {} cells; multigrid needs N = 2^k with k >= 3",
                    axis.cells
                )));
            }
        }
        Ok(())
    }

    /// Samples `field` at every interior point at time `t`.
    pub fn sample(&self, field: &ScalarField, t: f64) -> ArrayD<f64> {
        ArrayD::from_shape_fn(IxDyn(&self.interior_shape()), |idx| {
            field.eval(self.point(idx.slice()), t)
        })
    }
}

/// Function of `(x, y, z)` and `t`; lower-dimensional problems ignore the
/// trailing coordinates.
#[derive(Clone)]
pub struct ScalarField(Arc<dyn Fn([f64; 3], f64) -> f64 + Send + Sync>);

/// Diffusion coefficient of one direction; must be nonnegative.
pub type CoefficientField = ScalarField;

impl ScalarField {
    pub fn new(f: impl Fn([f64; 3], f64) -> f64 + Send + Sync + 'static) -> Self {
        Self(Arc::new(f))
    }

    pub fn constant(c: f64) -> Self {
        Self::new(move |_, _| c)
    }

    pub fn zero() -> Self {
        Self::constant(0.0)
    }

    #[inline]
    pub fn eval(&self, point: [f64; 3], t: f64) -> f64 {
        (self.0)(point, t)
    }
}

impl fmt::Debug for ScalarField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("ScalarField(..)")
    }
}

/// `T̃` for one interior size: the row weights and their circulant spectrum.
#[derive(Debug)]
pub struct AxisStencil {
    weights: RieszRowWeights,
    spectrum: CirculantSpectrum,
}

impl AxisStencil {
    pub fn new(nu: FractionalOrder, n: usize) -> Result<Self> {
        Self::with_provider(&ShiftedGrunwald, nu, n)
    }

    pub fn with_provider(
        provider: &dyn WeightProvider,
        nu: FractionalOrder,
        n: usize,
    ) -> Result<Self> {
        let weights = provider.row_weights(nu, n)?;
        let spectrum = embed_circulant(&SymmetricToeplitz::new(weights.as_slice().to_vec())?);
        Ok(Self { weights, spectrum })
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn order(&self) -> FractionalOrder {
        self.weights.order()
    }

    /// `2g₁`, the diagonal of `T̃`.
    pub fn diagonal(&self) -> f64 {
        self.weights.diagonal()
    }

    pub fn weights(&self) -> &RieszRowWeights {
        &self.weights
    }

    pub fn spectrum(&self) -> &CirculantSpectrum {
        &self.spectrum
    }

    pub fn toeplitz(&self) -> SymmetricToeplitz {
        SymmetricToeplitz::new(self.weights.as_slice().to_vec()).expect("nonempty weights")
    }

    /// `f64` values stored: first column plus complex spectrum.
    pub fn storage_len(&self) -> usize {
        self.weights.len() + self.spectrum.storage_len()
    }
}

/// Stencils for a nested sequence of grids, finest first.
///
/// Level `l + 1` has `(n_l − 1)/2` interior points. Coarsening stops once a
/// level has at most `coarsest` points (or cannot be halved). The weights do
/// not depend on time, so one ladder serves every step of a run.
#[derive(Debug)]
pub struct StencilLadder {
    nu: FractionalOrder,
    levels: Vec<AxisStencil>,
}

impl StencilLadder {
    pub fn new(nu: FractionalOrder, n: usize, coarsest: usize) -> Result<Self> {
        if coarsest == 0 {
            return Err(Error::InvalidArgument(
                "coarsest size must be positive".into(),
            ));
        }
        let mut levels = vec![AxisStencil::new(nu, n)?];
        let mut size = n;
        while size > coarsest && size >= 3 && size % 2 == 1 {
            size = (size - 1) / 2;
            levels.push(AxisStencil::new(nu, size)?);
        }
        Ok(Self { nu, levels })
    }

    pub fn order(&self) -> FractionalOrder {
        self.nu
    }

    pub fn levels(&self) -> &[AxisStencil] {
        &self.levels
    }

    pub fn finest(&self) -> &AxisStencil {
        &self.levels[0]
    }

    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    pub fn storage_len(&self) -> usize {
        self.levels.iter().map(AxisStencil::storage_len).sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    fn factor(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }
}

/// `A = diag(ξ) T̃` along one axis at a fixed half time level.
#[derive(Debug, Clone)]
pub struct DirectionalOperator {
    axis: Axis,
    ladder: Arc<StencilLadder>,
    xi: ArrayD<f64>,
}

/// Builds the operator for `axis` with its own stencil ladder.
pub fn build_directional_operator(
    grid: &GridSpec,
    axis: Axis,
    nu: FractionalOrder,
    coeff: &CoefficientField,
    t_half: f64,
) -> Result<DirectionalOperator> {
    check_axis(grid, axis)?;
    let ladder = StencilLadder::new(nu, grid.axis(axis).interior(), DEFAULT_COARSEST)?;
    DirectionalOperator::with_ladder(grid, axis, Arc::new(ladder), coeff, t_half)
}

fn check_axis(grid: &GridSpec, axis: Axis) -> Result<()> {
    if axis.index() >= grid.dim() {
        return Err(Error::InvalidArgument(format!(
            "axis {axis} on a {}-dimensional grid",
            grid.dim()
        )));
    }
    if grid.axis(axis).interior() < 3 {
        return Err(Error::InvalidArgument(format!(
            "axis {axis} needs at least 3 interior points"
        )));
    }
    Ok(())
}

impl DirectionalOperator {
    /// Samples the coefficient at every interior point at `t_half` and folds
    /// it, `Δt`, `Δx^ν` and `κ_ν` into `ξ`.
    pub fn with_ladder(
        grid: &GridSpec,
        axis: Axis,
        ladder: Arc<StencilLadder>,
        coeff: &CoefficientField,
        t_half: f64,
    ) -> Result<Self> {
        check_axis(grid, axis)?;
        let n = grid.axis(axis).interior();
        if ladder.finest().len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                actual: ladder.finest().len(),
            });
        }
        let nu = ladder.order();
        let (dx, dt) = (grid.dx(axis), grid.dt());
        let shape = grid.interior_shape();
        let mut xi = ArrayD::zeros(IxDyn(&shape));
        for (idx, x) in xi.indexed_iter_mut() {
            let point = grid.point(idx.slice());
            let c = coeff.eval(point, t_half);
            if c.is_nan() || c < 0.0 {
                return Err(Error::NegativeCoefficient {
                    value: c,
                    point,
                    time: t_half,
                });
            }
            *x = xi_scale(nu, dx, dt, c);
        }
        Ok(Self { axis, ladder, xi })
    }

    /// Operator from explicit scales; `xi` must be nonnegative.
    pub fn from_xi(axis: Axis, ladder: Arc<StencilLadder>, xi: ArrayD<f64>) -> Result<Self> {
        if axis.index() >= xi.ndim() {
            return Err(Error::InvalidArgument(format!(
                "axis {axis} on a {}-dimensional field",
                xi.ndim()
            )));
        }
        let n = xi.shape()[axis.index()];
        if ladder.finest().len() != n {
            return Err(Error::LengthMismatch {
                expected: ladder.finest().len(),
                actual: n,
            });
        }
        if let Some(v) = xi.iter().find(|v| !(**v >= 0.0)) {
            return Err(Error::InvalidArgument(format!("negative scale {v}")));
        }
        Ok(Self { axis, ladder, xi })
    }

    pub fn axis(&self) -> Axis {
        self.axis
    }

    pub fn order(&self) -> FractionalOrder {
        self.ladder.order()
    }

    pub fn ladder(&self) -> &Arc<StencilLadder> {
        &self.ladder
    }

    pub fn xi(&self) -> &ArrayD<f64> {
        &self.xi
    }

    pub fn line_len(&self) -> usize {
        self.ladder.finest().len()
    }

    pub fn shape(&self) -> &[usize] {
        self.xi.shape()
    }

    /// Stored `f64`s: the ladder's columns and spectra plus `ξ`.
    pub fn storage_len(&self) -> usize {
        self.ladder.storage_len() + self.xi.len()
    }

    fn check_shape(&self, field: &ArrayD<f64>) -> Result<()> {
        if field.shape() != self.xi.shape() {
            return Err(Error::ShapeMismatch {
                expected: self.xi.shape().to_vec(),
                actual: field.shape().to_vec(),
            });
        }
        Ok(())
    }

    /// `A · field`, line by line along the operator's axis.
    pub fn apply(&self, field: &ArrayD<f64>) -> Result<ArrayD<f64>> {
        let mut out = ArrayD::zeros(self.xi.raw_dim());
        self.apply_add(field, 1.0, &mut out)?;
        Ok(out)
    }

    /// `field ± A · field`.
    pub fn apply_shifted(&self, field: &ArrayD<f64>, sign: Sign) -> Result<ArrayD<f64>> {
        let mut out = field.clone();
        self.apply_add(field, sign.factor(), &mut out)?;
        Ok(out)
    }

    /// `out += scale · A · field`.
    pub fn apply_add(&self, field: &ArrayD<f64>, scale: f64, out: &mut ArrayD<f64>) -> Result<()> {
        self.check_shape(field)?;
        self.check_shape(out)?;
        let ax = NdAxis(self.axis.index());
        let spectrum = self.ladder.finest().spectrum();
        Zip::from(out.lanes_mut(ax))
            .and(field.lanes(ax))
            .and(self.xi.lanes(ax))
            .into_par_iter()
            .for_each_init(
                || spectrum.workspace(),
                |ws, (mut o, f, xi)| {
                    spectrum.matvec_with(f.iter().copied(), ws);
                    for ((o, t), x) in o.iter_mut().zip(CirculantSpectrum::result(ws)).zip(xi) {
                        *o += scale * x * t;
                    }
                },
            );
        Ok(())
    }

    /// Dense matrix of `A` over the flattened field (row-major, last axis
    /// fastest). Test oracle; guarded by [`DENSE_LIMIT`].
    pub fn to_dense(&self) -> Result<DMatrix<f64>> {
        let total = self.xi.len();
        if total > DENSE_LIMIT {
            return Err(Error::TooLarge(total));
        }
        let shape = self.xi.shape();
        let ax = self.axis.index();
        let stride: usize = shape[ax + 1..].iter().product();
        let w = self.ladder.finest().weights().as_slice();
        let xi = self.xi.as_standard_layout();
        let xi = xi.as_slice().expect("standard layout");
        let mut dense = DMatrix::zeros(total, total);
        for row in 0..total {
            let i = (row / stride) % shape[ax];
            let base = row - i * stride;
            for m in 0..shape[ax] {
                dense[(row, base + m * stride)] = xi[row] * w[i.abs_diff(m)];
            }
        }
        Ok(dense)
    }
}

/// Nonhomogeneous Dirichlet data would enter each sweep's right-hand side
/// here. All shipped problems have zero boundary values.
pub trait BoundaryContribution: Send + Sync {
    fn add_to_rhs(&self, axis: Axis, t: f64, rhs: &mut ArrayD<f64>);
}

#[derive(Debug, Clone, Copy, Default)]
pub struct HomogeneousDirichlet;

impl BoundaryContribution for HomogeneousDirichlet {
    fn add_to_rhs(&self, _axis: Axis, _t: f64, _rhs: &mut ArrayD<f64>) {}
}
