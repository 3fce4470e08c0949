use std::path::PathBuf;

use thiserror::Error;

use crate::operators::Axis;

#[derive(Debug, Error)]
pub enum Error {
    #[error("fractional order {0} is outside (1, 2]")]
    InvalidOrder(f64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("shape mismatch: expected {expected:?}, got {actual:?}")]
    ShapeMismatch {
        expected: Vec<usize>,
        actual: Vec<usize>,
    },

    #[error("coefficient is negative ({value:e}) at point {point:?}, t = {time}")]
    NegativeCoefficient {
        value: f64,
        point: [f64; 3],
        time: f64,
    },

    #[error("Gamma function pole at argument {0}")]
    GammaPole(f64),

    #[error("refusing to allocate a dense {0}x{0} matrix")]
    TooLarge(usize),

    #[error(
        "multigrid stalled after {iterations} iterations (relative residual {:.3e})",
        history.last().copied().unwrap_or(f64::NAN)
    )]
    NotConverged {
        iterations: usize,
        /// Relative residuals `‖r_l‖₂ / ‖r_0‖₂`, one per completed V-cycle.
        history: Vec<f64>,
    },

    #[error("line solve along {axis} failed at line {line:?}: {source}")]
    LineSolve {
        axis: Axis,
        /// Indices along the axes other than `axis`.
        line: Vec<usize>,
        #[source]
        source: Box<Error>,
    },

    #[error("config error: {0}")]
    Config(String),

    #[error("cannot write {path}: {source}")]
    Output {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
