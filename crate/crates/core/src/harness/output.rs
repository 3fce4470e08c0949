use std::fmt::Write as _;
use std::fs::File;
use std::io::Write as _;
use std::path::Path;

use super::ConvergenceRow;
use crate::error::{Error, Result};

pub const CSV_HEADER: [&str; 5] = ["N", "max_error", "rate", "avg_iter", "cpu_seconds"];

/// Fixed-width text table in the usual `N / error / rate / Iter / CPU` layout.
pub fn emit_table(rows: &[ConvergenceRow]) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "{:>8}  {:>12}  {:>8}  {:>6}  {:>10}",
        "N", "max error", "rate", "Iter", "CPU(s)"
    );
    for r in rows {
        let rate = r
            .rate
            .map_or_else(|| "-".to_string(), |v| format!("{v:.4}"));
        let _ = writeln!(
            s,
            "{:>8}  {:>12.4e}  {:>8}  {:>6.2}  {:>10.3}",
            r.n, r.max_error, rate, r.avg_iter, r.cpu_seconds
        );
    }
    s
}

fn create(path: &Path) -> Result<File> {
    File::create(path).map_err(|source| Error::Output {
        path: path.to_path_buf(),
        source,
    })
}

/// Writes `N,max_error,rate,avg_iter,cpu_seconds` with one line per row; the
/// rate cell is blank where there is no rate.
pub fn emit_csv(rows: &[ConvergenceRow], path: &Path) -> Result<()> {
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(create(path)?);
    w.write_record(CSV_HEADER)?;
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_csv(path: &Path) -> Result<Vec<ConvergenceRow>> {
    let mut r = csv::Reader::from_path(path)?;
    let header: Vec<String> = r.headers()?.iter().map(str::to_string).collect();
    if header != CSV_HEADER {
        return Err(Error::Config(format!("unexpected CSV header {header:?}")));
    }
    r.deserialize()
        .map(|row| row.map_err(Error::from))
        .collect()
}

/// Least-squares slope of `log e` against `log N`.
pub fn fitted_slope(rows: &[ConvergenceRow]) -> Option<f64> {
    if rows.len() < 2 {
        return None;
    }
    let pts: Vec<(f64, f64)> = rows
        .iter()
        .map(|r| ((r.n as f64).log2(), r.max_error.log2()))
        .collect();
    let m = pts.len() as f64;
    let (mx, my) = pts
        .iter()
        .fold((0.0, 0.0), |(a, b), (x, y)| (a + x / m, b + y / m));
    let (sxy, sxx) = pts.iter().fold((0.0, 0.0), |(a, b), (x, y)| {
        (a + (x - mx) * (y - my), b + (x - mx) * (x - mx))
    });
    Some(sxy / sxx)
}

const W: f64 = 480.0;
const H: f64 = 360.0;
const MARGIN: f64 = 56.0;

/// Log-log plot of error against `N` with a slope −2 reference line through
/// the first point, as a standalone SVG document. Output depends only on the
/// error column, so it is byte-identical for identical inputs.
pub fn render_plot(rows: &[ConvergenceRow]) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}">"#
    );
    let _ = writeln!(s, r#"<rect width="{W}" height="{H}" fill="white"/>"#);
    let pts: Vec<(f64, f64)> = rows
        .iter()
        .filter(|r| r.max_error > 0.0)
        .map(|r| ((r.n as f64).log10(), r.max_error.log10()))
        .collect();
    if let Some(&(x0, y0)) = pts.first() {
        let reference: Vec<(f64, f64)> =
            pts.iter().map(|&(x, _)| (x, y0 - 2.0 * (x - x0))).collect();
        let all = pts.iter().chain(&reference);
        let (mut xmin, mut xmax, mut ymin, mut ymax) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
        for &(x, y) in all {
            xmin = xmin.min(x);
            xmax = xmax.max(x);
            ymin = ymin.min(y);
            ymax = ymax.max(y);
        }
        let (xmin, xmax) = (xmin.floor(), xmax.ceil().max(xmin.floor() + 1.0));
        let (ymin, ymax) = (ymin.floor(), ymax.ceil().max(ymin.floor() + 1.0));
        let px = |x: f64| MARGIN + (x - xmin) / (xmax - xmin) * (W - 2.0 * MARGIN);
        let py = |y: f64| H - MARGIN - (y - ymin) / (ymax - ymin) * (H - 2.0 * MARGIN);

        let _ = writeln!(
            s,
            r#"<path d="M{:.2} {:.2} L{:.2} {:.2} L{:.2} {:.2}" fill="none" stroke="black"/>"#,
            px(xmin),
            py(ymax),
            px(xmin),
            py(ymin),
            px(xmax),
            py(ymin)
        );
        for d in (xmin as i32)..=(xmax as i32) {
            let x = px(d as f64);
            let _ = writeln!(
                s,
                r#"<text x="{x:.2}" y="{:.2}" font-size="11" text-anchor="middle">1e{d}</text>"#,
                H - MARGIN + 16.0
            );
        }
        for d in (ymin as i32)..=(ymax as i32) {
            let y = py(d as f64);
            let _ = writeln!(
                s,
                r#"<text x="{:.2}" y="{:.2}" font-size="11" text-anchor="end">1e{d}</text>"#,
                MARGIN - 6.0,
                y + 4.0
            );
        }
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" font-size="12" text-anchor="middle">N</text>"#,
            W / 2.0,
            H - 12.0
        );
        let _ = writeln!(
            s,
            r#"<text x="14" y="{:.2}" font-size="12" text-anchor="middle" transform="rotate(-90 14 {:.2})">max error</text>"#,
            H / 2.0,
            H / 2.0
        );

        let poly = |p: &[(f64, f64)]| {
            p.iter()
                .map(|&(x, y)| format!("{:.2},{:.2}", px(x), py(y)))
                .collect::<Vec<_>>()
                .join(" ")
        };
        let _ = writeln!(
            s,
            r#"<polyline points="{}" fill="none" stroke="gray" stroke-dasharray="6 4"/>"#,
            poly(&reference)
        );
        let _ = writeln!(
            s,
            r#"<polyline points="{}" fill="none" stroke="steelblue"/>"#,
            poly(&pts)
        );
        for &(x, y) in &pts {
            let _ = writeln!(
                s,
                r#"<circle cx="{:.2}" cy="{:.2}" r="3.5" fill="steelblue"/>"#,
                px(x),
                py(y)
            );
        }
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" font-size="11" fill="gray" text-anchor="end">slope -2</text>"#,
            W - MARGIN,
            MARGIN - 8.0
        );
    }
    s.push_str("</svg>\n");
    s
}

pub fn emit_plot(rows: &[ConvergenceRow], path: &Path) -> Result<()> {
    create(path)?
        .write_all(render_plot(rows).as_bytes())
        .map_err(|source| Error::Output {
            path: path.to_path_buf(),
            source,
        })
}
