//! Minimal standalone SVG output: line plots and grayscale heatmaps.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};

/// One named polyline.
#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    pub label: String,
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    /// Draw markers instead of a line (used for empirical estimates).
    pub points: bool,
}

impl Series {
    pub fn line(label: impl Into<String>, x: Vec<f64>, y: Vec<f64>) -> Self {
        Self {
            label: label.into(),
            x,
            y,
            points: false,
        }
    }

    pub fn markers(label: impl Into<String>, x: Vec<f64>, y: Vec<f64>) -> Self {
        Self {
            points: true,
            ..Self::line(label, x, y)
        }
    }
}

const PALETTE: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];
const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 420.0;
const MARGIN: f64 = 50.0;

fn range(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = values.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)));
    if lo == hi {
        (lo - 0.5, hi + 0.5)
    } else {
        (lo, hi)
    }
}

fn check_finite<'a>(values: impl IntoIterator<Item = &'a f64>) -> Result<()> {
    if values.into_iter().all(|v| v.is_finite()) {
        Ok(())
    } else {
        Err(Error::NonFiniteParameter)
    }
}

/// Renders the series to an SVG document.
pub fn lineplot_svg(title: &str, series: &[Series]) -> Result<String> {
    for s in series {
        if s.x.len() != s.y.len() {
            return Err(Error::LengthMismatch {
                expected: s.x.len(),
                found: s.y.len(),
            });
        }
        check_finite(s.x.iter().chain(&s.y))?;
    }
    let (x0, x1) = range(series.iter().flat_map(|s| s.x.iter().copied()));
    let (y0, y1) = range(series.iter().flat_map(|s| s.y.iter().copied()));
    let px = |x: f64| MARGIN + (x - x0) / (x1 - x0) * (WIDTH - 2.0 * MARGIN);
    let py = |y: f64| HEIGHT - MARGIN - (y - y0) / (y1 - y0) * (HEIGHT - 2.0 * MARGIN);

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        svg,
        r#"<text x="{}" y="20" text-anchor="middle" font-family="sans-serif" font-size="14">{}</text>"#,
        WIDTH / 2.0,
        escape(title)
    );
    let _ = writeln!(
        svg,
        r#"<g stroke="black" stroke-width="1"><line x1="{m}" y1="{b}" x2="{r}" y2="{b}"/><line x1="{m}" y1="{t}" x2="{m}" y2="{b}"/></g>"#,
        m = MARGIN,
        b = HEIGHT - MARGIN,
        r = WIDTH - MARGIN,
        t = MARGIN
    );
    if y0 < 0.0 && y1 > 0.0 {
        let _ = writeln!(
            svg,
            r##"<line x1="{}" y1="{z}" x2="{}" y2="{z}" stroke="#999" stroke-dasharray="4 3"/>"##,
            MARGIN,
            WIDTH - MARGIN,
            z = py(0.0)
        );
    }
    for (label, x, y, anchor) in [
        (fmt_tick(x0), MARGIN, HEIGHT - MARGIN + 16.0, "start"),
        (fmt_tick(x1), WIDTH - MARGIN, HEIGHT - MARGIN + 16.0, "end"),
        (fmt_tick(y0), MARGIN - 4.0, HEIGHT - MARGIN, "end"),
        (fmt_tick(y1), MARGIN - 4.0, MARGIN + 4.0, "end"),
    ] {
        let _ = writeln!(
            svg,
            r#"<text x="{x}" y="{y}" text-anchor="{anchor}" font-family="sans-serif" font-size="10">{label}</text>"#
        );
    }
    for (i, s) in series.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        if s.points {
            let _ = writeln!(svg, r#"<g fill="{color}">"#);
            for (&x, &y) in s.x.iter().zip(&s.y) {
                let _ = writeln!(svg, r#"<circle cx="{:.2}" cy="{:.2}" r="2.5"/>"#, px(x), py(y));
            }
            let _ = writeln!(svg, "</g>");
        } else {
            let pts: Vec<String> =
                s.x.iter()
                    .zip(&s.y)
                    .map(|(&x, &y)| format!("{:.2},{:.2}", px(x), py(y)))
                    .collect();
            let _ = writeln!(
                svg,
                r#"<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{}"/>"#,
                pts.join(" ")
            );
        }
        let ly = MARGIN + 14.0 * i as f64;
        let _ = writeln!(
            svg,
            r#"<text x="{}" y="{ly}" text-anchor="end" font-family="sans-serif" font-size="11" fill="{color}">{}</text>"#,
            WIDTH - MARGIN - 4.0,
            escape(&s.label)
        );
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}

/// Renders a row-major `rows x cols` grid as grayscale cells, lighter for
/// higher values. A constant grid renders uniform mid-gray.
pub fn heatmap_svg(values: &[f64], rows: usize, cols: usize) -> Result<String> {
    if values.len() != rows * cols {
        return Err(Error::LengthMismatch {
            expected: rows * cols,
            found: values.len(),
        });
    }
    check_finite(values)?;
    let lo = values.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let cell = (512.0 / rows.max(cols).max(1) as f64).max(1.0);
    let (w, h) = (cell * cols as f64, cell * rows as f64);
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}" shape-rendering="crispEdges">"#
    );
    for r in 0..rows {
        for c in 0..cols {
            let v = values[r * cols + c];
            let g = if hi > lo {
                (255.0 * (v - lo) / (hi - lo)).round() as u8
            } else {
                128
            };
            let _ = writeln!(
                svg,
                r#"<rect x="{}" y="{}" width="{cell}" height="{cell}" fill="rgb({g},{g},{g})"/>"#,
                c as f64 * cell,
                r as f64 * cell
            );
        }
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}

pub fn emit_svg_lineplot(path: &Path, title: &str, series: &[Series]) -> Result<()> {
    write(path, &lineplot_svg(title, series)?)
}

pub fn emit_svg_heatmap(path: &Path, values: &[f64], rows: usize, cols: usize) -> Result<()> {
    write(path, &heatmap_svg(values, rows, cols)?)
}

fn write(path: &Path, svg: &str) -> Result<()> {
    std::fs::write(path, svg).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn fmt_tick(v: f64) -> String {
    if v != 0.0 && (v.abs() < 1e-2 || v.abs() >= 1e4) {
        format!("{v:.2e}")
    } else {
        format!("{:.3}", v)
    }
}
