//! Second-order locally-one-dimensional multigrid solvers for the
//! variable-coefficient Riesz fractional diffusion equation
//!
//! ```text
//! u_t = c(x,y,z,t) ∂^α u/∂|x|^α + d(x,y,z,t) ∂^β u/∂|y|^β + e(x,y,z,t) ∂^γ u/∂|z|^γ + f
//! ```
//!
//! on boxes in one to three dimensions with homogeneous Dirichlet data.
//!
//! The crate is layered bottom-up:
//!
//! - [`stencil`]: shifted Grünwald weights `g_m` and the symmetric Riesz row.
//! - [`toeplitz`]: symmetric Toeplitz storage with circulant-embedded FFT matvecs.
//! - [`operators`]: grids, coefficient fields and the per-direction operators
//!   `A = diag(ξ)·T̃` applied line by line.
//! - [`multigrid`]: V-cycle multigrid for `(I − A) u = f` on a single line.
//! - [`lod`]: Crank–Nicolson (1D), Douglas and Peaceman–Rachford (2D) and
//!   Douglas (3D) alternating-direction time steppers.
//! - [`problems`]: manufactured test problems with closed-form forcing.
//! - [`harness`]: convergence studies, tables, CSV and plot output.

// `!(x >= 0.0)` style checks are used on purpose so that NaN is rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod harness;
pub mod lod;
pub mod multigrid;
pub mod operators;
pub mod problems;
pub mod stencil;
pub mod toeplitz;

pub use error::{Error, Result};
pub use stencil::FractionalOrder;
