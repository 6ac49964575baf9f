use std::fmt::Write as _;
use std::io::Write;
use std::path::Path;

use crate::runner::{RunRecord, SummaryRow};
use crate::BenchError;

pub const CSV_HEADER: [&str; 11] = [
    "game",
    "algorithm",
    "perturbation",
    "eps",
    "size",
    "rep",
    "seed",
    "iterations",
    "terminated",
    "exploitability",
    "ms",
];

/// Writes records as CSV. Failed runs keep their row with an empty
/// exploitability.
pub fn write_csv<W: Write>(records: &[RunRecord], out: W) -> Result<(), BenchError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in records {
        let expl = if r.exploitability.is_finite() {
            format!("{:.12e}", r.exploitability)
        } else {
            String::new()
        };
        w.write_record([
            r.game.clone(),
            r.algorithm.to_string(),
            r.perturbation.clone(),
            r.eps.to_string(),
            r.size.to_string(),
            r.rep.to_string(),
            r.seed.to_string(),
            r.iterations.to_string(),
            r.terminated.to_string(),
            expl,
            format!("{:.3}", r.ms),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn emit_csv(records: &[RunRecord], path: &Path) -> Result<(), BenchError> {
    let file = std::fs::File::create(path).map_err(|e| BenchError::io(path, e))?;
    write_csv(records, std::io::BufWriter::new(file))
}

const COLORS: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf",
];

/// True when the sizes form a geometric progression with ratio at least 2.
fn geometric(sizes: &[usize]) -> bool {
    if sizes.len() < 3 || sizes[0] == 0 {
        return false;
    }
    let r = sizes[1] as f64 / sizes[0] as f64;
    r >= 2.0
        && sizes
            .windows(2)
            .all(|w| ((w[1] as f64 / w[0] as f64) - r).abs() < 1e-9)
}

/// Line plot of mean iterations against size, one line per series, with a
/// shaded band of one standard deviation.
pub fn render_svg(summary: &[SummaryRow]) -> String {
    let (w, h) = (640.0, 400.0);
    let (left, right, top, bottom) = (60.0, 170.0, 20.0, 40.0);
    let mut sizes: Vec<usize> = summary.iter().map(|r| r.size).collect();
    sizes.sort_unstable();
    sizes.dedup();
    let log_x = geometric(&sizes);
    let fx = |s: usize| if log_x { (s as f64).ln() } else { s as f64 };
    let (x0, x1) = match (sizes.first(), sizes.last()) {
        (Some(&a), Some(&b)) if a != b => (fx(a), fx(b)),
        (Some(&a), _) => (fx(a) - 1.0, fx(a) + 1.0),
        _ => (0.0, 1.0),
    };
    let y1 = summary.iter().map(|r| r.mean + r.sd).fold(1.0, f64::max) * 1.05;
    let px = |s: usize| left + (fx(s) - x0) / (x1 - x0) * (w - left - right);
    let py = |v: f64| h - bottom - v.max(0.0) / y1 * (h - top - bottom);

    let mut series: Vec<&str> = Vec::new();
    for r in summary {
        if !series.contains(&r.series.as_str()) {
            series.push(&r.series);
        }
    }

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}" font-family="sans-serif" font-size="11">"#
    );
    let _ = writeln!(s, r#"<rect width="{w}" height="{h}" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<path d="M{left} {top} V{:.2} H{:.2}" fill="none" stroke="black"/>"#,
        h - bottom,
        w - right
    );
    for &size in &sizes {
        let x = px(size);
        let _ = writeln!(
            s,
            r#"<text x="{x:.2}" y="{:.2}" text-anchor="middle">{size}</text>"#,
            h - bottom + 15.0
        );
    }
    for k in 0..=4 {
        let v = y1 * k as f64 / 4.0;
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{:.0}</text>"#,
            left - 5.0,
            py(v) + 4.0,
            v
        );
    }
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">size{}</text>"#,
        left + (w - left - right) / 2.0,
        h - 5.0,
        if log_x { " (log scale)" } else { "" }
    );
    for (idx, name) in series.iter().enumerate() {
        let color = COLORS[idx % COLORS.len()];
        let rows: Vec<&SummaryRow> = summary.iter().filter(|r| r.series == *name).collect();
        let mut band = String::new();
        for r in &rows {
            let _ = write!(band, "{:.2},{:.2} ", px(r.size), py(r.mean + r.sd));
        }
        for r in rows.iter().rev() {
            let _ = write!(band, "{:.2},{:.2} ", px(r.size), py(r.mean - r.sd));
        }
        let _ = writeln!(
            s,
            r#"<polygon points="{}" fill="{color}" fill-opacity="0.2" stroke="none"/>"#,
            band.trim_end()
        );
        let line: Vec<String> = rows
            .iter()
            .map(|r| format!("{:.2},{:.2}", px(r.size), py(r.mean)))
            .collect();
        let _ = writeln!(
            s,
            r#"<polyline points="{}" fill="none" stroke="{color}" stroke-width="2"/>"#,
            line.join(" ")
        );
        let ly = top + 15.0 * idx as f64 + 10.0;
        let lx = w - right + 10.0;
        let _ = writeln!(
            s,
            r#"<line x1="{lx:.2}" y1="{ly:.2}" x2="{:.2}" y2="{ly:.2}" stroke="{color}" stroke-width="2"/>"#,
            lx + 20.0
        );
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}">{}</text>"#,
            lx + 25.0,
            ly + 4.0,
            escape(name)
        );
    }
    s.push_str("</svg>\n");
    s
}

fn escape(t: &str) -> String {
    t.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

pub fn emit_svg_plot(summary: &[SummaryRow], path: &Path) -> Result<(), BenchError> {
    std::fs::write(path, render_svg(summary)).map_err(|e| BenchError::io(path, e))
}
