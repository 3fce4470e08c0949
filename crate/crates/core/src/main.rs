use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use rieszlod::harness::{emit_csv, emit_plot, emit_table, run_study, RunConfig};

/// Convergence study for the variable-coefficient Riesz fractional
/// diffusion equation. Settings come from the defaults, then `--config`,
/// then individual flags.
#[derive(Parser, Debug)]
#[command(name = "rieszlod", version)]
struct Cli {
    /// Flat `key = value` file; keys are flag names with `-` → `_`.
    #[arg(long)]
    config: Option<PathBuf>,
    /// 1d, 2d or 3d.
    #[arg(long)]
    problem: Option<String>,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    beta: Option<f64>,
    #[arg(long)]
    gamma: Option<f64>,
    /// cn (1D), dad (2D/3D) or prad (2D).
    #[arg(long)]
    scheme: Option<String>,
    /// Smallest exponent k, N = 2^k.
    #[arg(long)]
    kmin: Option<u32>,
    /// Largest exponent k, N = 2^k.
    #[arg(long)]
    kmax: Option<u32>,
    /// Time steps per spatial interval count, N_t = ceil(ratio · N).
    #[arg(long)]
    nt_ratio: Option<f64>,
    /// Relative residual tolerance of the multigrid solves.
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    max_iter: Option<usize>,
    #[arg(long)]
    omega_pre: Option<f64>,
    #[arg(long)]
    omega_post: Option<f64>,
    #[arg(long)]
    pre_sweeps: Option<usize>,
    #[arg(long)]
    post_sweeps: Option<usize>,
    /// Largest coarsest-level size (1..=7).
    #[arg(long)]
    coarsest: Option<usize>,
    /// CSV output path.
    #[arg(long)]
    out: Option<PathBuf>,
    /// SVG plot output path.
    #[arg(long)]
    plot: Option<PathBuf>,
}

impl Cli {
    fn overrides(&self) -> Vec<(&'static str, String)> {
        let s = |v: &Option<f64>| v.map(|x| x.to_string());
        let p = |v: &Option<PathBuf>| v.as_ref().map(|x| x.display().to_string());
        [
            ("problem", self.problem.clone()),
            ("alpha", s(&self.alpha)),
            ("beta", s(&self.beta)),
            ("gamma", s(&self.gamma)),
            ("scheme", self.scheme.clone()),
            ("kmin", self.kmin.map(|v| v.to_string())),
            ("kmax", self.kmax.map(|v| v.to_string())),
            ("nt_ratio", s(&self.nt_ratio)),
            ("tol", s(&self.tol)),
            ("max_iter", self.max_iter.map(|v| v.to_string())),
            ("omega_pre", s(&self.omega_pre)),
            ("omega_post", s(&self.omega_post)),
            ("pre_sweeps", self.pre_sweeps.map(|v| v.to_string())),
            ("post_sweeps", self.post_sweeps.map(|v| v.to_string())),
            ("coarsest", self.coarsest.map(|v| v.to_string())),
            ("out", p(&self.out)),
            ("plot", p(&self.plot)),
        ]
        .into_iter()
        .filter_map(|(k, v)| v.map(|v| (k, v)))
        .collect()
    }
}

fn configure(cli: &Cli) -> rieszlod::Result<RunConfig> {
    let mut cfg = RunConfig::default();
    if let Some(path) = &cli.config {
        cfg.apply_file(path)?;
    }
    for (key, value) in cli.overrides() {
        cfg.apply(key, &value)?;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = match configure(&cli) {
        Ok(cfg) => cfg,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let study = match run_study(&cfg) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    print!("{}", emit_table(&study.rows));
    let mut ok = study.is_success();
    for (n, e) in &study.failures {
        eprintln!("N = {n} failed: {e}");
    }
    if let Some(path) = &cfg.out {
        if let Err(e) = emit_csv(&study.rows, path) {
            eprintln!("error: {e}");
            ok = false;
        }
    }
    if let Some(path) = &cfg.plot {
        if let Err(e) = emit_plot(&study.rows, path) {
            eprintln!("error: {e}");
            ok = false;
        }
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
