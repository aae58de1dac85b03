//! Minimal SVG 1.1 line plots.

use std::fmt::Write;

const W: f64 = 640.0;
const H: f64 = 400.0;
const PAD: f64 = 50.0;
const COLORS: [&str; 5] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"];

pub struct Series<'a> {
    pub label: &'a str,
    pub points: Vec<(f64, f64)>,
}

/// Line plot of the series; with `log_y` the ordinate is log10 of |y|.
pub fn line_plot(title: &str, x_label: &str, series: &[Series], log_y: bool) -> String {
    let tr = |y: f64| if log_y { y.abs().max(1e-300).log10() } else { y };
    let pts: Vec<Vec<(f64, f64)>> = series
        .iter()
        .map(|s| s.points.iter().map(|&(x, y)| (x, tr(y))).filter(|p| p.0.is_finite() && p.1.is_finite()).collect())
        .collect();
    let all = pts.iter().flatten();
    let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for &(x, y) in all {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    if !(x1 > x0) {
        x1 = x0 + 1.0;
    }
    if !(y1 > y0) {
        y1 = y0 + 1.0;
    }
    let sx = |x: f64| PAD + (x - x0) / (x1 - x0) * (W - 2.0 * PAD);
    let sy = |y: f64| H - PAD - (y - y0) / (y1 - y0) * (H - 2.0 * PAD);
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<?xml version="1.0" encoding="UTF-8"?>
<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{W}" height="{H}" viewBox="0 0 {W} {H}">
<rect width="100%" height="100%" fill="white"/>
<text x="{}" y="20" text-anchor="middle" font-family="sans-serif" font-size="14">{}</text>
<rect x="{PAD}" y="{PAD}" width="{}" height="{}" fill="none" stroke="black"/>"#,
        W / 2.0,
        escape(title),
        W - 2.0 * PAD,
        H - 2.0 * PAD
    );
    let ylab = if log_y { "log10 |y|" } else { "y" };
    let _ = writeln!(
        s,
        r#"<text x="{}" y="{}" text-anchor="middle" font-family="sans-serif" font-size="12">{}</text>
<text x="12" y="{}" font-family="sans-serif" font-size="12" transform="rotate(-90 12 {})" text-anchor="middle">{ylab}</text>
<text x="{PAD}" y="{}" font-family="sans-serif" font-size="10">{x0:.4}</text>
<text x="{}" y="{}" font-family="sans-serif" font-size="10" text-anchor="end">{x1:.4}</text>
<text x="{}" y="{}" font-family="sans-serif" font-size="10" text-anchor="end">{y0:.4}</text>
<text x="{}" y="{}" font-family="sans-serif" font-size="10" text-anchor="end">{y1:.4}</text>"#,
        W / 2.0,
        H - 10.0,
        escape(x_label),
        H / 2.0,
        H / 2.0,
        H - PAD + 14.0,
        W - PAD,
        H - PAD + 14.0,
        PAD - 4.0,
        H - PAD,
        PAD - 4.0,
        PAD + 10.0
    );
    if y0 < 0.0 && y1 > 0.0 && !log_y {
        let _ = writeln!(s, r##"<line x1="{PAD}" x2="{}" y1="{:.2}" y2="{:.2}" stroke="#999" stroke-dasharray="4 3"/>"##, W - PAD, sy(0.0), sy(0.0));
    }
    for (k, (ser, p)) in series.iter().zip(&pts).enumerate() {
        let col = COLORS[k % COLORS.len()];
        let mut poly = String::new();
        for &(x, y) in p {
            let _ = write!(poly, "{:.2},{:.2} ", sx(x), sy(y));
        }
        let _ = writeln!(s, r#"<polyline fill="none" stroke="{col}" stroke-width="1.2" points="{}"/>"#, poly.trim_end());
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{}" font-family="sans-serif" font-size="11" fill="{col}">{}</text>"#,
            PAD + 8.0,
            PAD + 14.0 * (k + 1) as f64,
            escape(ser.label)
        );
    }
    s.push_str("</svg>\n");
    s
}

fn escape(t: &str) -> String {
    t.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
