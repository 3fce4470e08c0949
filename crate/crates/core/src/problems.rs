//! Manufactured test problems with closed-form forcing.
//!
//! Every exact solution is `e^{−t}` times a product of bumps
//! `φ(x) = (x − a)²(b − x)²`, one per axis. Expanding `φ` in powers of
//! `s = x − a` (or `b − x`) and applying the Riemann–Liouville power rule to
//! each term gives the Riesz derivative of `φ` in closed form, from which the
//! forcing `f = u_t − Σ c_k ∂^{ν_k} u/∂|x_k|^{ν_k}` follows.

use std::fmt;
use std::sync::Arc;

use statrs::function::gamma::gamma;

use crate::error::{Error, Result};
use crate::operators::{AxisGrid, GridSpec, ScalarField};
use crate::stencil::{riesz_coefficient, FractionalOrder};

/// Which end of the interval a one-sided derivative is anchored at.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Riemann–Liouville derivative of order `ν` of `s^p`, where `s` is the
/// distance to the anchoring end: `Γ(p+1)/Γ(p+1−ν) · s^{p−ν}`.
/// The formula is the same on either side once `s` is measured from the
/// correct end.
pub fn rl_power_derivative(p: f64, nu: FractionalOrder, s: f64, _side: Side) -> Result<f64> {
    let nu = nu.value();
    let z = p + 1.0 - nu;
    if z <= 0.0 && z == z.round() {
        return Err(Error::GammaPole(z));
    }
    if !(p > -1.0) || !(p - nu > -1.0) {
        return Err(Error::InvalidArgument(format!(
            "power rule needs p > -1 and p - nu > -1, got p = {p}, nu = {nu}"
        )));
    }
    if !(s >= 0.0) {
        return Err(Error::InvalidArgument(format!("distance {s} is negative")));
    }
    Ok(gamma(p + 1.0) / gamma(z) * s.powf(p - nu))
}

/// `φ(x) = (x − a)²(b − x)²`.
pub fn bump(lower: f64, upper: f64, x: f64) -> f64 {
    let (s, r) = (x - lower, upper - x);
    s * s * r * r
}

/// Riesz derivative `−κ_ν (D_left + D_right) φ` of the bump on `[a, b]`.
pub fn riesz_bump(nu: FractionalOrder, lower: f64, upper: f64, x: f64) -> f64 {
    let w = upper - lower;
    // φ = w² s² − 2w s³ + s⁴ in either s = x − a or s = b − x.
    let terms = [(2.0, w * w), (3.0, -2.0 * w), (4.0, 1.0)];
    let one_sided = |s: f64| -> f64 {
        terms
            .iter()
            .map(|&(p, a)| a * rl_power_derivative(p, nu, s, Side::Left).expect("p >= 2 > nu - 1"))
            .sum()
    };
    -riesz_coefficient(nu) * (one_sided(x - lower) + one_sided(upper - x))
}

/// A PDE with known solution on a box, zero Dirichlet data, over `[0, T]`.
#[derive(Clone)]
pub struct ManufacturedProblem {
    name: String,
    orders: Vec<FractionalOrder>,
    domain: Vec<(f64, f64)>,
    final_time: f64,
    coefficients: Vec<ScalarField>,
    forcing: ScalarField,
    exact: ScalarField,
}

impl fmt::Debug for ManufacturedProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ManufacturedProblem")
            .field("name", &self.name)
            .field("orders", &self.orders)
            .field("domain", &self.domain)
            .field("final_time", &self.final_time)
            .finish_non_exhaustive()
    }
}

impl ManufacturedProblem {
    /// Evaluator-based problem. One order, interval and coefficient per axis.
    pub fn custom(
        name: impl Into<String>,
        orders: Vec<FractionalOrder>,
        domain: Vec<(f64, f64)>,
        final_time: f64,
        coefficients: Vec<ScalarField>,
        forcing: ScalarField,
        exact: ScalarField,
    ) -> Result<Self> {
        let dim = orders.len();
        if !(1..=3).contains(&dim) {
            return Err(Error::InvalidArgument(format!(
                "dimension {dim} is not 1, 2 or 3"
            )));
        }
        if domain.len() != dim || coefficients.len() != dim {
            return Err(Error::InvalidArgument(
                "orders, domain and coefficients need one entry per axis".into(),
            ));
        }
        if domain
            .iter()
            .any(|&(a, b)| !(a.is_finite() && b.is_finite() && a < b))
        {
            return Err(Error::InvalidArgument(
                "every interval needs lower < upper".into(),
            ));
        }
        if !(final_time > 0.0 && final_time.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "final time {final_time} is not positive"
            )));
        }
        Ok(Self {
            name: name.into(),
            orders,
            domain,
            final_time,
            coefficients,
            forcing,
            exact,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dimension(&self) -> usize {
        self.orders.len()
    }

    pub fn orders(&self) -> &[FractionalOrder] {
        &self.orders
    }

    pub fn domain(&self) -> &[(f64, f64)] {
        &self.domain
    }

    pub fn final_time(&self) -> f64 {
        self.final_time
    }

    pub fn coefficients(&self) -> &[ScalarField] {
        &self.coefficients
    }

    pub fn forcing(&self) -> &ScalarField {
        &self.forcing
    }

    pub fn exact(&self) -> &ScalarField {
        &self.exact
    }

    pub fn initial(&self, point: [f64; 3]) -> f64 {
        self.exact.eval(point, 0.0)
    }

    /// Grid with `cells` cells on every axis and `steps` time steps up to `T`.
    pub fn grid(&self, cells: usize, steps: usize) -> Result<GridSpec> {
        let axes = self
            .domain
            .iter()
            .map(|&(a, b)| AxisGrid::new(a, b, cells))
            .collect::<Result<Vec<_>>>()?;
        GridSpec::new(axes, self.final_time, steps)
    }
}

type Coefficient = Arc<dyn Fn([f64; 3], f64) -> f64 + Send + Sync>;

/// `u = e^{−t} Π φ(x_k)` with coefficient `c_k` on axis `k`, unit box, `T = 1`.
fn bump_problem(
    name: String,
    orders: Vec<FractionalOrder>,
    coefficients: Vec<Coefficient>,
) -> ManufacturedProblem {
    let dim = orders.len();
    let profile =
        move |p: [f64; 3]| -> f64 { p[..dim].iter().map(|&x| bump(0.0, 1.0, x)).product() };
    let exact = ScalarField::new(move |p, t| (-t).exp() * profile(p));
    let forcing = {
        let orders = orders.clone();
        let coefficients = coefficients.clone();
        ScalarField::new(move |p, t| {
            let decay = (-t).exp();
            let mut f = -decay * profile(p);
            for (k, (nu, c)) in orders.iter().zip(&coefficients).enumerate() {
                let others: f64 = (0..dim)
                    .filter(|&j| j != k)
                    .map(|j| bump(0.0, 1.0, p[j]))
                    .product();
                f -= c(p, t) * decay * riesz_bump(*nu, 0.0, 1.0, p[k]) * others;
            }
            f
        })
    };
    let coefficients = coefficients
        .into_iter()
        .map(|c| ScalarField::new(move |p, t| c(p, t)))
        .collect();
    ManufacturedProblem {
        name,
        orders,
        domain: vec![(0.0, 1.0); dim],
        final_time: 1.0,
        coefficients,
        forcing,
        exact,
    }
}

fn check_open(nu: FractionalOrder) -> Result<FractionalOrder> {
    if nu.value() >= 2.0 {
        return Err(Error::InvalidOrder(nu.value()));
    }
    Ok(nu)
}

/// `u = e^{−t} x²(1−x)²`, `c = x^α t`.
pub fn problem_1d(alpha: FractionalOrder) -> Result<ManufacturedProblem> {
    let a = check_open(alpha)?.value();
    Ok(bump_problem(
        format!("1d(alpha={a})"),
        vec![alpha],
        vec![Arc::new(move |p: [f64; 3], t| p[0].powf(a) * t)],
    ))
}

/// `u = e^{−t} x²(1−x)² y²(1−y)²`, `c = x^α y`, `d = x y^β`.
pub fn problem_2d(alpha: FractionalOrder, beta: FractionalOrder) -> Result<ManufacturedProblem> {
    let (a, b) = (check_open(alpha)?.value(), check_open(beta)?.value());
    Ok(bump_problem(
        format!("2d(alpha={a}, beta={b})"),
        vec![alpha, beta],
        vec![
            Arc::new(move |p: [f64; 3], _| p[0].powf(a) * p[1]),
            Arc::new(move |p: [f64; 3], _| p[0] * p[1].powf(b)),
        ],
    ))
}

/// `u = e^{−t} Π x_k²(1−x_k)²`, `c = x^α yz`, `d = x y^β z`, `e = xy z^γ`.
pub fn problem_3d(
    alpha: FractionalOrder,
    beta: FractionalOrder,
    gamma: FractionalOrder,
) -> Result<ManufacturedProblem> {
    let (a, b, g) = (
        check_open(alpha)?.value(),
        check_open(beta)?.value(),
        check_open(gamma)?.value(),
    );
    Ok(bump_problem(
        format!("3d(alpha={a}, beta={b}, gamma={g})"),
        vec![alpha, beta, gamma],
        vec![
            Arc::new(move |p: [f64; 3], _| p[0].powf(a) * p[1] * p[2]),
            Arc::new(move |p: [f64; 3], _| p[0] * p[1].powf(b) * p[2]),
            Arc::new(move |p: [f64; 3], _| p[0] * p[1] * p[2].powf(g)),
        ],
    ))
}
