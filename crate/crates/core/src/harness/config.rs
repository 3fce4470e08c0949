use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::lod::SchemeKind;
use crate::multigrid::MgConfig;
use crate::problems::{problem_1d, problem_2d, problem_3d, ManufacturedProblem};
use crate::stencil::FractionalOrder;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProblemKind {
    OneD,
    TwoD,
    ThreeD,
    /// Evaluator-based problem; only usable through
    /// [`run_study_with`](super::run_study_with).
    Custom,
}

impl ProblemKind {
    pub fn dimension(self) -> Option<usize> {
        match self {
            Self::OneD => Some(1),
            Self::TwoD => Some(2),
            Self::ThreeD => Some(3),
            Self::Custom => None,
        }
    }
}

impl FromStr for ProblemKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "1d" => Ok(Self::OneD),
            "2d" => Ok(Self::TwoD),
            "3d" => Ok(Self::ThreeD),
            "custom" => Ok(Self::Custom),
            _ => Err(Error::Config(format!(
                "unknown problem '{s}' (expected 1d, 2d, 3d or custom)"
            ))),
        }
    }
}

impl fmt::Display for ProblemKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::OneD => "1d",
            Self::TwoD => "2d",
            Self::ThreeD => "3d",
            Self::Custom => "custom",
        })
    }
}

/// Scheme family as named on the command line; the dimension picks the
/// concrete [`SchemeKind`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SchemeChoice {
    Cn,
    Dad,
    Prad,
}

impl FromStr for SchemeChoice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cn" => Ok(Self::Cn),
            "dad" => Ok(Self::Dad),
            "prad" => Ok(Self::Prad),
            _ => Err(Error::Config(format!(
                "unknown scheme '{s}' (expected cn, dad or prad)"
            ))),
        }
    }
}

impl fmt::Display for SchemeChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Cn => "cn",
            Self::Dad => "dad",
            Self::Prad => "prad",
        })
    }
}

/// Study settings. A config file holds `key = value` lines whose keys are
/// the command-line flag names with `-` replaced by `_`; `#` starts a
/// comment.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub problem: ProblemKind,
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub scheme: SchemeChoice,
    /// Studies run `N = 2^k` for `k = kmin..=kmax`.
    pub kmin: u32,
    pub kmax: u32,
    /// `N_t = ceil(nt_ratio · N)`.
    pub nt_ratio: f64,
    pub mg: MgConfig,
    pub out: Option<PathBuf>,
    pub plot: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            problem: ProblemKind::OneD,
            alpha: 1.5,
            beta: 1.5,
            gamma: 1.5,
            scheme: SchemeChoice::Cn,
            kmin: 5,
            kmax: 8,
            nt_ratio: 1.0,
            mg: MgConfig::default(),
            out: None,
            plot: None,
        }
    }
}

fn parse<T: FromStr>(key: &str, value: &str) -> Result<T> {
    value
        .parse()
        .map_err(|_| Error::Config(format!("invalid value '{value}' for {key}")))
}

impl RunConfig {
    /// Sets one key from its textual value.
    pub fn apply(&mut self, key: &str, value: &str) -> Result<()> {
        let value = value.trim();
        match key.trim() {
            "problem" => self.problem = value.parse()?,
            "alpha" => self.alpha = parse(key, value)?,
            "beta" => self.beta = parse(key, value)?,
            "gamma" => self.gamma = parse(key, value)?,
            "scheme" => self.scheme = value.parse()?,
            "kmin" => self.kmin = parse(key, value)?,
            "kmax" => self.kmax = parse(key, value)?,
            "nt_ratio" => self.nt_ratio = parse(key, value)?,
            "tol" => self.mg.tolerance = parse(key, value)?,
            "max_iter" => self.mg.max_iterations = parse(key, value)?,
            "omega_pre" => self.mg.smoother.omega_pre = parse(key, value)?,
            "omega_post" => self.mg.smoother.omega_post = parse(key, value)?,
            "pre_sweeps" => self.mg.smoother.pre_sweeps = parse(key, value)?,
            "post_sweeps" => self.mg.smoother.post_sweeps = parse(key, value)?,
            "coarsest" => self.mg.coarsest = parse(key, value)?,
            "out" => self.out = Some(PathBuf::from(value)),
            "plot" => self.plot = Some(PathBuf::from(value)),
            other => return Err(Error::Config(format!("unknown key '{other}'"))),
        }
        Ok(())
    }

    /// Applies every `key = value` line of `text`.
    pub fn apply_text(&mut self, text: &str) -> Result<()> {
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::Config(format!("line {}: expected key = value", lineno + 1))
            })?;
            self.apply(key, value)
                .map_err(|e| Error::Config(format!("line {}: {e}", lineno + 1)))?;
        }
        Ok(())
    }

    pub fn apply_file(&mut self, path: &Path) -> Result<()> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Output {
            path: path.to_path_buf(),
            source,
        })?;
        self.apply_text(&text)
    }

    /// Orders of the selected problem, checked to lie in `(1, 2)`.
    pub fn orders(&self) -> Result<Vec<FractionalOrder>> {
        let dim = self.problem.dimension().unwrap_or(0);
        [
            ("alpha", self.alpha),
            ("beta", self.beta),
            ("gamma", self.gamma),
        ][..dim]
            .iter()
            .map(|&(name, v)| {
                if v > 1.0 && v < 2.0 {
                    FractionalOrder::new(v)
                } else {
                    Err(Error::Config(format!("{name} = {v} is outside (1, 2)")))
                }
            })
            .collect()
    }

    pub fn scheme_kind(&self, dim: usize) -> Result<SchemeKind> {
        match (self.scheme, dim) {
            (SchemeChoice::Cn, 1) => Ok(SchemeKind::Cn1d),
            (SchemeChoice::Dad, 2) => Ok(SchemeKind::Dad2d),
            (SchemeChoice::Prad, 2) => Ok(SchemeKind::Prad2d),
            (SchemeChoice::Dad, 3) => Ok(SchemeKind::Dad3d),
            (s, d) => Err(Error::Config(format!(
                "scheme {s} is not available in {d}D"
            ))),
        }
    }

    pub fn time_steps(&self, n: usize) -> usize {
        ((self.nt_ratio * n as f64).ceil() as usize).max(1)
    }

    pub(crate) fn validate_grid(&self) -> Result<()> {
        if self.kmin < 3 || self.kmin > self.kmax || self.kmax > 24 {
            return Err(Error::Config(format!(
                "exponents {}..={} must satisfy 3 <= kmin <= kmax <= 24",
                self.kmin, self.kmax
            )));
        }
        if !(self.nt_ratio > 0.0 && self.nt_ratio.is_finite()) {
            return Err(Error::Config(format!(
                "nt_ratio {} is not positive",
                self.nt_ratio
            )));
        }
        self.mg.validate()
    }

    /// Checks everything that can be checked before any compute.
    pub fn validate(&self) -> Result<()> {
        self.validate_grid()?;
        let Some(dim) = self.problem.dimension() else {
            return Err(Error::Config(
                "custom problems are supplied through the library, not the config".into(),
            ));
        };
        self.orders()?;
        self.scheme_kind(dim)?;
        Ok(())
    }

    /// The built-in problem this config selects.
    pub fn problem(&self) -> Result<ManufacturedProblem> {
        self.validate()?;
        let o = self.orders()?;
        match self.problem {
            ProblemKind::OneD => problem_1d(o[0]),
            ProblemKind::TwoD => problem_2d(o[0], o[1]),
            ProblemKind::ThreeD => problem_3d(o[0], o[1], o[2]),
            ProblemKind::Custom => unreachable!("rejected by validate"),
        }
    }
}
