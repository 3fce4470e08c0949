//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails. Run with `cargo test --release --test acceptance`.

use std::hint::black_box;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use nalgebra::{DMatrix, DVector};
use ndarray::ArrayD;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use rieszlod::harness::{emit_table, run_study, ProblemKind, RunConfig, SchemeChoice};
use rieszlod::lod::{
    cn_step_1d, dad_step_2d, dad_step_3d, max_error, prad_step_2d, run, run_observed, SchemeKind,
    SolutionField, StepContext,
};
use rieszlod::multigrid::{
    measure_tgm_contraction, v_cycle_in_place, MgConfig, MgWorkspace, MultigridHierarchy,
    SmootherConfig,
};
use rieszlod::operators::{
    Axis, AxisGrid, DirectionalOperator, GridSpec, HomogeneousDirichlet, ScalarField,
    StencilLadder, DEFAULT_COARSEST,
};
use rieszlod::problems::{problem_1d, problem_2d, problem_3d, ManufacturedProblem};
use rieszlod::stencil::{riesz_row_weights, xi_scale};
use rieszlod::toeplitz::{dense_expand, embed_circulant, toeplitz_matvec, SymmetricToeplitz};
use rieszlod::FractionalOrder;

/// `(N, error, rate, avg_iter)`.
type RowSummary = (usize, f64, Option<f64>, f64);
type Criterion = fn() -> Outcome;

fn order(nu: f64) -> FractionalOrder {
    FractionalOrder::new(nu).unwrap()
}

struct Outcome {
    pass: bool,
    summary: String,
}

struct Checker {
    pass: bool,
    notes: Vec<String>,
}

impl Checker {
    fn new() -> Self {
        Self {
            pass: true,
            notes: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, note: String) {
        if !ok {
            self.pass = false;
            self.notes.push(format!("MISS {note}"));
        } else {
            self.notes.push(format!("ok   {note}"));
        }
    }

    fn finish(self, summary: String) -> Outcome {
        for n in &self.notes {
            println!("      {n}");
        }
        Outcome {
            pass: self.pass,
            summary,
        }
    }
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

/// Paper row: N, error, rate (absent on the first row), iterations.
type PaperRow = (usize, f64, Option<f64>, f64);

fn compare_rows(
    c: &mut Checker,
    label: &str,
    rows: &[(usize, f64, Option<f64>, f64)],
    paper: &[PaperRow],
    rate_tol: f64,
    check_iter: bool,
) {
    if rows.len() != paper.len() {
        c.check(
            false,
            format!("{label}: {} rows, expected {}", rows.len(), paper.len()),
        );
        return;
    }
    for (got, want) in rows.iter().zip(paper) {
        let (n, e, r, it) = *got;
        let (_, pe, pr, pit) = *want;
        c.check(
            rel(e, pe) <= 0.02,
            format!(
                "{label} N={n}: error {e:.4e} vs {pe:.4e} ({:.3}%)",
                100.0 * rel(e, pe)
            ),
        );
        if let Some(pr) = pr {
            let r = r.unwrap_or(f64::NAN);
            c.check(
                (r - pr).abs() <= rate_tol,
                format!("{label} N={n}: rate {r:.4} vs {pr:.4}"),
            );
        }
        if check_iter {
            c.check(
                (it - pit).abs() <= 1.0,
                format!("{label} N={n}: iterations {it:.2} vs {pit:.1}"),
            );
        }
    }
}

fn study(
    problem: ProblemKind,
    scheme: SchemeChoice,
    orders: [f64; 3],
    kmin: u32,
    kmax: u32,
) -> Vec<(usize, f64, Option<f64>, f64)> {
    let cfg = RunConfig {
        problem,
        scheme,
        alpha: orders[0],
        beta: orders[1],
        gamma: orders[2],
        kmin,
        kmax,
        ..RunConfig::default()
    };
    let out = run_study(&cfg).expect("valid config");
    for (n, e) in &out.failures {
        println!("      N={n} failed: {e}");
    }
    for line in emit_table(&out.rows).lines() {
        println!("      | {line}");
    }
    out.rows
        .iter()
        .map(|r| (r.n, r.max_error, r.rate, r.avg_iter))
        .collect()
}

fn criterion_1() -> Outcome {
    let mut c = Checker::new();
    let tables: [(f64, [PaperRow; 4]); 2] = [
        (
            1.1,
            [
                (32, 7.8755e-5, None, 4.0),
                (64, 2.1801e-5, Some(1.8530), 4.0),
                (128, 5.6999e-6, Some(1.9354), 4.0),
                (256, 1.4565e-6, Some(1.9684), 3.0),
            ],
        ),
        (
            1.9,
            [
                (32, 7.5578e-5, None, 6.0),
                (64, 1.9255e-5, Some(1.9727), 6.0),
                (128, 4.8923e-6, Some(1.9766), 6.0),
                (256, 1.2407e-6, Some(1.9794), 6.0),
            ],
        ),
    ];
    let start = Instant::now();
    for (alpha, paper) in &tables {
        let rows = study(
            ProblemKind::OneD,
            SchemeChoice::Cn,
            [*alpha, 1.5, 1.5],
            5,
            8,
        );
        compare_rows(&mut c, &format!("alpha={alpha}"), &rows, paper, 0.1, true);
    }
    let secs = start.elapsed().as_secs_f64();
    c.check(secs < 120.0, format!("runtime {secs:.2} s"));
    c.finish(format!(
        "1D reference errors, alpha in {{1.1, 1.9}}, N = 2^5..2^8 ({secs:.2} s)"
    ))
}

fn relative_gap(a: &SolutionField, b: &SolutionField) -> f64 {
    let diff = (&a.values - &b.values)
        .iter()
        .fold(0.0f64, |m, v| m.max(v.abs()));
    diff / a.max_norm()
}

fn criterion_2() -> Outcome {
    let mut c = Checker::new();
    let pairs: [((f64, f64), [PaperRow; 3]); 2] = [
        (
            (1.1, 1.1),
            [
                (16, 2.4698e-5, None, 4.5),
                (32, 6.1249e-6, Some(2.0117), 4.0),
                (64, 1.5212e-6, Some(2.0095), 4.0),
            ],
        ),
        (
            (1.8, 1.9),
            [
                (16, 2.5475e-5, None, 7.0),
                (32, 6.5211e-6, Some(1.9659), 6.0),
                (64, 1.6662e-6, Some(1.9686), 6.0),
            ],
        ),
    ];
    let mg = MgConfig::default();
    let mut worst_gap: f64 = 0.0;
    for ((a, b), paper) in &pairs {
        let p = problem_2d(order(*a), order(*b)).unwrap();
        let mut per_scheme: Vec<Vec<RowSummary>> = vec![Vec::new(), Vec::new()];
        for &n in &[16usize, 32, 64] {
            let grid = p.grid(n, n).unwrap();
            let mut fields: Vec<SolutionField> = Vec::new();
            for (s, scheme) in [SchemeKind::Dad2d, SchemeKind::Prad2d]
                .into_iter()
                .enumerate()
            {
                let (u, rep) = run(&p, &grid, scheme, &mg).unwrap();
                let e = max_error(&grid, &u, &p, 1.0);
                let rate = per_scheme[s]
                    .last()
                    .map(|prev: &(usize, f64, Option<f64>, f64)| (prev.1 / e).log2());
                per_scheme[s].push((n, e, rate, rep.mean_iterations()));
                fields.push(u);
            }
            let loose = relative_gap(&fields[0], &fields[1]);
            // The schemes coincide algebraically; comparing them to 1e-9 needs
            // line solves converged well below the 1e-7 used for the tables.
            let tight = MgConfig {
                tolerance: 1e-12,
                ..MgConfig::default()
            };
            let (d, _) = run(&p, &grid, SchemeKind::Dad2d, &tight).unwrap();
            let (r, _) = run(&p, &grid, SchemeKind::Prad2d, &tight).unwrap();
            let gap = relative_gap(&d, &r);
            worst_gap = worst_gap.max(gap);
            c.check(
                gap <= 1e-9,
                format!("({a}, {b}) N={n}: D-AD vs PR-AD relative gap {gap:.2e} (solver tol 1e-12; {loose:.1e} at 1e-7)"),
            );
        }
        for (s, name) in ["D-AD", "PR-AD"].iter().enumerate() {
            for (n, e, r, it) in &per_scheme[s] {
                println!(
                    "      | {name} ({a}, {b}) N={n:<3} error {e:.4e}  rate {}  iter {it:.2}",
                    r.map_or("-".to_string(), |r| format!("{r:.4}"))
                );
            }
            compare_rows(
                &mut c,
                &format!("{name} ({a}, {b})"),
                &per_scheme[s],
                paper,
                0.1,
                true,
            );
        }
    }
    c.finish(format!(
        "2D reference errors, D-AD and PR-AD, N = 2^4..2^6; scheme gap <= {worst_gap:.1e}"
    ))
}

fn criterion_3() -> Outcome {
    let mut c = Checker::new();
    let cases: [([f64; 3], [PaperRow; 2]); 2] = [
        (
            [1.1, 1.1, 1.1],
            [
                (8, 5.9349e-6, None, 4.75),
                (16, 1.4792e-6, Some(2.0044), 4.0),
            ],
        ),
        (
            [1.8, 1.9, 1.8],
            [
                (8, 5.8311e-6, None, 7.0),
                (16, 1.4867e-6, Some(1.9717), 7.0),
            ],
        ),
    ];
    for (orders, paper) in &cases {
        let rows = study(ProblemKind::ThreeD, SchemeChoice::Dad, *orders, 3, 4);
        compare_rows(&mut c, &format!("{orders:?}"), &rows, paper, 0.15, false);
    }
    c.finish("3D reference errors, N = 2^3, 2^4".into())
}

fn flat(a: &ArrayD<f64>) -> DVector<f64> {
    DVector::from_iterator(a.len(), a.iter().copied())
}

fn operators_at(p: &ManufacturedProblem, grid: &GridSpec, t: f64) -> Vec<DirectionalOperator> {
    (0..p.dimension())
        .map(|k| {
            let ladder =
                StencilLadder::new(p.orders()[k], grid.axes()[k].interior(), DEFAULT_COARSEST)
                    .unwrap();
            DirectionalOperator::with_ladder(
                grid,
                Axis::from_index(k).unwrap(),
                Arc::new(ladder),
                &p.coefficients()[k],
                t,
            )
            .unwrap()
        })
        .collect()
}

fn max_diff(a: &ArrayD<f64>, b: &DVector<f64>) -> f64 {
    a.iter()
        .zip(b.iter())
        .fold(0.0, |m, (x, y)| m.max((x - y).abs()))
}

/// Mid-run state: exact solution at `t_k` and one step to `t_{k+1}`.
fn one_step_case(
    p: &ManufacturedProblem,
    n: usize,
    k: usize,
) -> (GridSpec, SolutionField, ArrayD<f64>, f64) {
    let grid = p.grid(n, n).unwrap();
    let t_half = grid.time(k) + 0.5 * grid.dt();
    let u = SolutionField {
        values: grid.sample(p.exact(), grid.time(k)),
        time_index: k,
    };
    let f = grid.sample(p.forcing(), t_half);
    (grid, u, f, t_half)
}

fn criterion_4() -> Outcome {
    let mut c = Checker::new();
    let mg = MgConfig::default();
    let mut worst: f64 = 0.0;
    for nu in [1.1, 1.5, 1.9] {
        let p = problem_1d(order(nu)).unwrap();
        for n in [16usize, 64, 256] {
            let (grid, u, f, t_half) = one_step_case(&p, n, n / 2);
            let ops = operators_at(&p, &grid, t_half);
            let ctx = StepContext::new(grid.dt(), t_half, &mg);
            let (next, _) = cn_step_1d(&u, &ops[0], &f, &ctx).unwrap();
            let a = ops[0].to_dense().unwrap();
            let id = DMatrix::identity(n - 1, n - 1);
            let rhs = (&id + &a) * flat(&u.values) + flat(&f) * grid.dt();
            let want = (&id - &a).lu().solve(&rhs).unwrap();
            let d = max_diff(&next.values, &want);
            worst = worst.max(d);
            c.check(d <= 1e-8, format!("CN nu={nu} n={}: {d:.2e}", n - 1));
        }
    }
    for (a, b) in [(1.1, 1.1), (1.8, 1.9)] {
        let p = problem_2d(order(a), order(b)).unwrap();
        let (grid, u, f, t_half) = one_step_case(&p, 8, 3);
        let ops = operators_at(&p, &grid, t_half);
        let ctx = StepContext::new(grid.dt(), t_half, &mg);
        let (ax, ay) = (ops[0].to_dense().unwrap(), ops[1].to_dense().unwrap());
        let id = DMatrix::identity(ax.nrows(), ax.nrows());
        let lhs = (&id - &ax) * (&id - &ay);
        let rhs = (&id + &ax) * (&id + &ay) * flat(&u.values) + flat(&f) * grid.dt();
        let want = lhs.lu().solve(&rhs).unwrap();
        let (dad, _) = dad_step_2d(&u, &ops[0], &ops[1], &f, &ctx).unwrap();
        let (prad, _) = prad_step_2d(&u, &ops[0], &ops[1], &f, &ctx).unwrap();
        for (name, got) in [("D-AD", dad), ("PR-AD", prad)] {
            let d = max_diff(&got.values, &want);
            worst = worst.max(d);
            c.check(d <= 1e-8, format!("{name} ({a}, {b}) N=8: {d:.2e}"));
        }
    }
    for orders in [[1.1, 1.1, 1.1], [1.8, 1.9, 1.8]] {
        let p = problem_3d(order(orders[0]), order(orders[1]), order(orders[2])).unwrap();
        let (grid, u, f, t_half) = one_step_case(&p, 8, 3);
        let ops = operators_at(&p, &grid, t_half);
        let ctx = StepContext::new(grid.dt(), t_half, &mg);
        let (ax, ay, az) = (
            ops[0].to_dense().unwrap(),
            ops[1].to_dense().unwrap(),
            ops[2].to_dense().unwrap(),
        );
        let id = DMatrix::identity(ax.nrows(), ax.nrows());
        let lhs = (&id - &ax) * (&id - &ay) * (&id - &az);
        let rhs = (&id + &ax + &ay + &az + &ax * &ay + &ax * &az + &ay * &az - &ax * &ay * &az)
            * flat(&u.values)
            + flat(&f) * grid.dt();
        let want = lhs.lu().solve(&rhs).unwrap();
        let (got, _) = dad_step_3d(&u, &ops[0], &ops[1], &ops[2], &f, &ctx).unwrap();
        let d = max_diff(&got.values, &want);
        worst = worst.max(d);
        c.check(d <= 1e-8, format!("D-AD 3D {orders:?} N=8: {d:.2e}"));
    }
    c.finish(format!(
        "one LOD-MGM step vs dense factored solve, worst {worst:.2e}"
    ))
}

fn criterion_5() -> Outcome {
    let mut c = Checker::new();
    let mut rng = StdRng::seed_from_u64(5);
    let mut worst: f64 = 0.0;
    for nu in [1.1, 1.5, 1.9, 2.0] {
        for n in [2usize, 3, 8, 33, 64, 255] {
            let t = SymmetricToeplitz::new(riesz_row_weights(order(nu), n).unwrap().into_vec())
                .unwrap();
            let spec = embed_circulant(&t);
            let dense = dense_expand(&t).unwrap();
            let norm_t = (0..n)
                .map(|i| dense.row(i).iter().map(|v| v.abs()).sum::<f64>())
                .fold(0.0, f64::max);
            for _ in 0..3 {
                let v: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
                let norm_v = v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
                let fast = toeplitz_matvec(&spec, &v).unwrap();
                let slow = &dense * DVector::from_column_slice(&v);
                let err = fast
                    .iter()
                    .zip(slow.iter())
                    .fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
                let scaled = err / (1.0 + norm_t * norm_v);
                worst = worst.max(scaled);
                if scaled > 1e-12 {
                    c.check(false, format!("nu={nu} n={n}: {scaled:.2e}"));
                }
            }
        }
    }
    c.check(
        worst <= 1e-12,
        format!("worst scaled error {worst:.2e} over 72 products"),
    );
    c.finish(format!("FFT Toeplitz matvec vs dense, worst {worst:.1e}"))
}

fn criterion_6() -> Outcome {
    let mut c = Checker::new();
    let mut worst: f64 = 0.0;
    for nu in [1.1, 1.5, 1.9] {
        for n in [8usize, 16, 32, 64] {
            for dt_ratio in [1.0, 10.0] {
                let dx = 1.0 / n as f64;
                let axes = vec![AxisGrid::new(0.0, 1.0, n).unwrap()];
                let grid = GridSpec::new(axes, dt_ratio, n).unwrap();
                let p = problem_1d(order(nu)).unwrap();
                let coeffs = [p.coefficients()[0].clone(), ScalarField::constant(1.0)];
                for coeff in &coeffs {
                    for t in [0.5 * grid.dt(), grid.final_time() - 0.5 * grid.dt()] {
                        let ladder = Arc::new(
                            StencilLadder::new(order(nu), n - 1, DEFAULT_COARSEST).unwrap(),
                        );
                        let op = DirectionalOperator::with_ladder(&grid, Axis::X, ladder, coeff, t)
                            .unwrap();
                        let a = op.to_dense().unwrap();
                        let id = DMatrix::identity(n - 1, n - 1);
                        let m = (&id - &a).lu().solve(&(&id + &a)).unwrap();
                        let rho = m
                            .complex_eigenvalues()
                            .iter()
                            .fold(0.0f64, |r, z| r.max(z.norm()));
                        worst = worst.max(rho);
                        if rho >= 1.0 {
                            c.check(
                                false,
                                format!(
                                    "nu={nu} n={} dt={}dx t={t:.3}: rho {rho}",
                                    n - 1,
                                    dt_ratio * dx / dx
                                ),
                            );
                        }
                    }
                }
            }
        }
    }
    c.check(
        worst < 1.0,
        format!("largest eigenvalue modulus {worst:.6}"),
    );

    let cases: Vec<(ManufacturedProblem, SchemeKind, usize)> = vec![
        (problem_1d(order(1.1)).unwrap(), SchemeKind::Cn1d, 64),
        (problem_1d(order(1.9)).unwrap(), SchemeKind::Cn1d, 64),
        (
            problem_2d(order(1.1), order(1.1)).unwrap(),
            SchemeKind::Dad2d,
            32,
        ),
        (
            problem_2d(order(1.8), order(1.9)).unwrap(),
            SchemeKind::Prad2d,
            32,
        ),
        (
            problem_3d(order(1.1), order(1.1), order(1.1)).unwrap(),
            SchemeKind::Dad3d,
            16,
        ),
        (
            problem_3d(order(1.8), order(1.9), order(1.8)).unwrap(),
            SchemeKind::Dad3d,
            16,
        ),
    ];
    for (p, scheme, n) in cases {
        let axes = (0..p.dimension())
            .map(|_| AxisGrid::new(0.0, 1.0, n).unwrap())
            .collect();
        // Δt = 10Δx with N_t = N steps.
        let grid = GridSpec::new(axes, 10.0, n).unwrap();
        let u0 = grid
            .sample(p.exact(), 0.0)
            .iter()
            .fold(0.0f64, |m, v| m.max(v.abs()));
        let mut peak = 0.0f64;
        let res = run_observed(
            &p,
            &grid,
            scheme,
            &MgConfig::default(),
            &HomogeneousDirichlet,
            &mut |u, _| {
                peak = peak.max(u.max_norm());
            },
        );
        match res {
            Ok(_) => c.check(
                peak <= 2.0 * u0,
                format!(
                    "{} {scheme} N={n}, dt=10dx: peak/initial {:.3}",
                    p.name(),
                    peak / u0
                ),
            ),
            Err(e) => c.check(false, format!("{} {scheme} N={n}: {e}", p.name())),
        }
    }
    c.finish(format!(
        "spectral radius of CN step map < 1 (max {worst:.4}); bounded long runs"
    ))
}

fn criterion_7() -> Outcome {
    let mut c = Checker::new();
    let mut worst_margin = f64::INFINITY;
    for nu in [1.2, 1.5, 1.8] {
        for n in [15usize, 31, 63] {
            let dx = 1.0 / (n + 1) as f64;
            for dt_ratio in [0.1, 1.0, 10.0] {
                let xi = vec![xi_scale(order(nu), dx, dt_ratio * dx, 1.0); n];
                for omega in [0.5, 1.0] {
                    let t = measure_tgm_contraction(order(nu), &xi, omega, 32, 7).unwrap();
                    worst_margin = worst_margin.min(t.bound - t.operator_norm);
                    let ok = t.operator_norm < t.bound && t.sampled <= t.operator_norm + 1e-12;
                    if !ok {
                        c.check(false, format!(
                            "nu={nu} n={n} dt={dt_ratio}dx omega={omega}: |M|_A {:.4} vs bound {:.4}",
                            t.operator_norm, t.bound
                        ));
                    } else if dt_ratio == 1.0 && omega == 1.0 {
                        c.check(true, format!(
                            "nu={nu} n={n} dt=dx omega=1: |M|_A {:.4} (sampled {:.4}) < {:.4}, eta0 {:.4}",
                            t.operator_norm, t.sampled, t.bound, t.eta0
                        ));
                    }
                }
            }
        }
    }
    c.finish(format!(
        "two-grid energy-norm contraction below sqrt(1 - 2 sigma/5), min margin {worst_margin:.3}"
    ))
}

fn time_v_cycle(nu: f64, n_cells: usize) -> (f64, usize) {
    let n = n_cells - 1;
    let dx = 1.0 / n_cells as f64;
    let ladder = Arc::new(StencilLadder::new(order(nu), n, DEFAULT_COARSEST).unwrap());
    let xi: Vec<f64> = (1..=n)
        .map(|i| xi_scale(order(nu), dx, dx, (i as f64 * dx).powf(nu)))
        .collect();
    let storage = ladder.storage_len() + xi.len();
    let h = MultigridHierarchy::from_fine_xi(Arc::clone(&ladder), &xi).unwrap();
    let mut ws = MgWorkspace::new(&ladder);
    let mut rng = StdRng::seed_from_u64(n as u64);
    let f: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
    let mut u = vec![0.0; n];
    let cfg = SmootherConfig::default();
    let reps = (1 << 20) / n_cells + 2;
    let mut best = f64::INFINITY;
    for _ in 0..5 {
        let start = Instant::now();
        for _ in 0..reps {
            v_cycle_in_place(&h, &mut u, &f, &cfg, &mut ws).unwrap();
            black_box(&u);
        }
        best = best.min(start.elapsed().as_secs_f64() / reps as f64);
    }
    (best, storage)
}

fn criterion_8() -> Outcome {
    let mut c = Checker::new();
    let sizes: Vec<usize> = (12..=17).map(|k| 1usize << k).collect();
    let measured: Vec<(f64, usize)> = sizes.iter().map(|&n| time_v_cycle(1.5, n)).collect();
    let mut worst_time: f64 = 0.0;
    let mut worst_storage: f64 = 0.0;
    for i in 1..sizes.len() {
        let tr = measured[i].0 / measured[i - 1].0;
        let sr = measured[i].1 as f64 / measured[i - 1].1 as f64;
        worst_time = worst_time.max(tr);
        worst_storage = worst_storage.max(sr);
        c.check(
            tr <= 3.0,
            format!(
                "N={} -> {}: V-cycle {:.1} us -> {:.1} us, ratio {tr:.2}",
                sizes[i - 1],
                sizes[i],
                1e6 * measured[i - 1].0,
                1e6 * measured[i].0
            ),
        );
        c.check(
            (1.9..=2.1).contains(&sr),
            format!(
                "N={} -> {}: operator storage {} -> {} values, ratio {sr:.3}",
                sizes[i - 1],
                sizes[i],
                measured[i - 1].1,
                measured[i].1
            ),
        );
    }
    c.finish(format!(
        "V-cycle time ratio <= {worst_time:.2}, storage ratio <= {worst_storage:.3} for N >= 2^12"
    ))
}

fn main() -> ExitCode {
    // libtest flags (e.g. from `cargo test -- --nocapture`) are accepted and ignored.
    let criteria: [(&str, Criterion); 8] = [
        ("Reference convergence table (1D)", criterion_1),
        ("Reference convergence tables (2D)", criterion_2),
        ("Reference convergence table (3D)", criterion_3),
        ("Oracle equivalence", criterion_4),
        ("Structured-operator correctness", criterion_5),
        ("Stability", criterion_6),
        ("TGM contraction bound", criterion_7),
        ("Complexity scaling", criterion_8),
    ];
    let mut results = Vec::new();
    for (i, (name, f)) in criteria.iter().enumerate() {
        println!("[{}] {name}", i + 1);
        let out = f();
        println!(
            "{} [{}] {name}: {}",
            if out.pass { "PASS" } else { "FAIL" },
            i + 1,
            out.summary
        );
        results.push(out.pass);
    }
    let passed = results.iter().filter(|&&p| p).count();
    println!("acceptance: {passed}/{} criteria passed", results.len());
    if passed == results.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
