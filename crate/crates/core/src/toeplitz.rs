//! Symmetric Toeplitz matrices applied through a circulant embedding.
//!
//! A symmetric `n×n` Toeplitz matrix `T` with first column `c` sits in the
//! leading block of the `L×L` circulant with first column
//! `(c_0, …, c_{n−1}, 0, …, 0, c_{n−1}, …, c_1)` for any `L ≥ 2n − 1`.
//! Circulants are diagonalised by the DFT, so
//!
//! ```text
//! T v = [ F⁻¹ diag(F ĉ) F (v, 0) ]_{0..n}
//! ```
//!
//! costs two length-`L` FFTs. `L` is the smallest power of two `≥ 2n`.

use std::fmt;
use std::sync::Arc;

use nalgebra::DMatrix;
use rustfft::num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use crate::error::{Error, Result};

/// Largest size [`dense_expand`] will materialise.
pub const DENSE_LIMIT: usize = 4096;

/// Symmetric Toeplitz matrix `T[j,k] = c[|j − k|]`.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricToeplitz {
    first_column: Vec<f64>,
}

impl SymmetricToeplitz {
    pub fn new(first_column: Vec<f64>) -> Result<Self> {
        if first_column.is_empty() {
            return Err(Error::InvalidArgument("empty Toeplitz column".into()));
        }
        Ok(Self { first_column })
    }

    pub fn first_column(&self) -> &[f64] {
        &self.first_column
    }

    pub fn len(&self) -> usize {
        self.first_column.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// DFT of the embedding circulant's first column, with the inverse
/// transform's `1/L` folded in.
#[derive(Clone)]
pub struct CirculantSpectrum {
    n: usize,
    eigenvalues: Vec<Complex64>,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
}

impl fmt::Debug for CirculantSpectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CirculantSpectrum")
            .field("n", &self.n)
            .field("embedding_len", &self.eigenvalues.len())
            .finish()
    }
}

/// Embedding length used for an `n×n` Toeplitz block.
pub fn embedding_len(n: usize) -> usize {
    (2 * n).next_power_of_two()
}

impl CirculantSpectrum {
    /// Toeplitz size `n`.
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Circulant size `L`.
    pub fn embedding_len(&self) -> usize {
        self.eigenvalues.len()
    }

    /// Circulant eigenvalues `F ĉ`, unnormalised.
    pub fn eigenvalues(&self) -> Vec<Complex64> {
        let l = self.eigenvalues.len() as f64;
        self.eigenvalues.iter().map(|z| z * l).collect()
    }

    /// Number of `f64` values held by the spectrum.
    pub fn storage_len(&self) -> usize {
        2 * self.eigenvalues.len()
    }

    /// Scratch owned by one caller; spectra themselves are shared read-only.
    pub fn workspace(&self) -> ToeplitzWorkspace {
        let scratch = self
            .forward
            .get_inplace_scratch_len()
            .max(self.inverse.get_inplace_scratch_len());
        ToeplitzWorkspace {
            buffer: vec![Complex64::default(); self.eigenvalues.len()],
            scratch: vec![Complex64::default(); scratch],
        }
    }

    /// `out = T v`. Both slices have length `n`.
    pub fn matvec_into(
        &self,
        v: &[f64],
        out: &mut [f64],
        ws: &mut ToeplitzWorkspace,
    ) -> Result<()> {
        self.check_len(v.len())?;
        self.check_len(out.len())?;
        self.matvec_with(v.iter().copied(), ws);
        for (o, z) in out.iter_mut().zip(&ws.buffer) {
            *o = z.re;
        }
        Ok(())
    }

    /// Loads the (possibly strided) input, then leaves `T v` in the real parts
    /// of `ws.buffer[..n]`.
    pub(crate) fn matvec_with(&self, v: impl Iterator<Item = f64>, ws: &mut ToeplitzWorkspace) {
        let buf = &mut ws.buffer;
        debug_assert_eq!(
            buf.len(),
            self.eigenvalues.len(),
            "workspace from another spectrum"
        );
        let mut loaded = 0;
        for (b, x) in buf.iter_mut().zip(v) {
            *b = Complex64::new(x, 0.0);
            loaded += 1;
        }
        debug_assert_eq!(loaded, self.n);
        buf[self.n..].fill(Complex64::default());
        self.forward.process_with_scratch(buf, &mut ws.scratch);
        for (b, lambda) in buf.iter_mut().zip(&self.eigenvalues) {
            *b *= lambda;
        }
        self.inverse.process_with_scratch(buf, &mut ws.scratch);
    }

    pub(crate) fn result(ws: &ToeplitzWorkspace) -> impl Iterator<Item = f64> + '_ {
        ws.buffer.iter().map(|z| z.re)
    }

    fn check_len(&self, len: usize) -> Result<()> {
        if len != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                actual: len,
            });
        }
        Ok(())
    }
}

/// Per-caller FFT buffers for [`CirculantSpectrum::matvec_into`].
#[derive(Debug, Clone)]
pub struct ToeplitzWorkspace {
    buffer: Vec<Complex64>,
    scratch: Vec<Complex64>,
}

/// Builds the circulant embedding of `t` and transforms its first column.
pub fn embed_circulant(t: &SymmetricToeplitz) -> CirculantSpectrum {
    let n = t.len();
    let l = embedding_len(n);
    let c = t.first_column();
    let mut column = vec![Complex64::default(); l];
    column[0] = Complex64::new(c[0], 0.0);
    for k in 1..n {
        column[k] = Complex64::new(c[k], 0.0);
        column[l - k] = Complex64::new(c[k], 0.0);
    }
    let mut planner = FftPlanner::new();
    let forward = planner.plan_fft_forward(l);
    let inverse = planner.plan_fft_inverse(l);
    forward.process(&mut column);
    let scale = 1.0 / l as f64;
    for z in &mut column {
        *z *= scale;
    }
    CirculantSpectrum {
        n,
        eigenvalues: column,
        forward,
        inverse,
    }
}

/// Allocating convenience wrapper around [`CirculantSpectrum::matvec_into`].
pub fn toeplitz_matvec(spec: &CirculantSpectrum, v: &[f64]) -> Result<Vec<f64>> {
    let mut ws = spec.workspace();
    let mut out = vec![0.0; spec.len()];
    spec.matvec_into(v, &mut out, &mut ws)?;
    Ok(out)
}

/// Dense `n×n` copy of `t`, for use as a test oracle only.
pub fn dense_expand(t: &SymmetricToeplitz) -> Result<DMatrix<f64>> {
    let n = t.len();
    if n > DENSE_LIMIT {
        return Err(Error::TooLarge(n));
    }
    let c = t.first_column();
    Ok(DMatrix::from_fn(n, n, |j, k| c[j.abs_diff(k)]))
}
