//! Minimal line-plot writer: axes, bound and optimized curves, legend.

use std::fmt::Write;

use crate::format::sig12;
use crate::sweep::SweepRow;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 420.0;
const MARGIN: f64 = 60.0;

pub fn line_plot(title: &str, x_label: &str, rows: &[SweepRow]) -> String {
    let xs: Vec<f64> = rows.iter().map(|r| r.param_value).collect();
    let ys: Vec<f64> = rows
        .iter()
        .flat_map(|r| std::iter::once(r.bound).chain(r.optimized))
        .collect();
    let (x0, x1) = extent(&xs);
    let (y0, y1) = extent(&ys);
    let px = |x: f64| MARGIN + (x - x0) / (x1 - x0) * (WIDTH - 2.0 * MARGIN);
    let py = |y: f64| HEIGHT - MARGIN - (y - y0) / (y1 - y0) * (HEIGHT - 2.0 * MARGIN);

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<text x="{}" y="24" text-anchor="middle" font-size="14">{}</text>"#,
        WIDTH / 2.0,
        escape(title)
    );
    let (left, right, top, bottom) = (MARGIN, WIDTH - MARGIN, MARGIN, HEIGHT - MARGIN);
    let _ = writeln!(
        s,
        r#"<polyline points="{left},{top} {left},{bottom} {right},{bottom}" fill="none" stroke="black"/>"#
    );
    for i in 0..=4 {
        let f = i as f64 / 4.0;
        let (x, y) = (x0 + f * (x1 - x0), y0 + f * (y1 - y0));
        let _ = writeln!(
            s,
            r#"<text x="{:.1}" y="{}" text-anchor="middle">{}</text>"#,
            px(x),
            bottom + 18.0,
            short(x)
        );
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{:.1}" text-anchor="end">{}</text>"#,
            left - 6.0,
            py(y) + 4.0,
            short(y)
        );
    }
    let _ = writeln!(
        s,
        r#"<text x="{}" y="{}" text-anchor="middle">{}</text>"#,
        WIDTH / 2.0,
        HEIGHT - 16.0,
        escape(x_label)
    );

    let curve = |pts: Vec<(f64, f64)>| -> String {
        pts.iter()
            .map(|(x, y)| format!("{:.2},{:.2}", px(*x), py(*y)))
            .collect::<Vec<_>>()
            .join(" ")
    };
    let bound: Vec<(f64, f64)> = rows.iter().map(|r| (r.param_value, r.bound)).collect();
    let optimized: Vec<(f64, f64)> = rows
        .iter()
        .filter_map(|r| r.optimized.map(|o| (r.param_value, o)))
        .collect();
    let _ = writeln!(
        s,
        r##"<polyline points="{}" fill="none" stroke="#1f77b4" stroke-width="2"/>"##,
        curve(bound)
    );
    let has_optimized = !optimized.is_empty();
    if has_optimized {
        let _ = writeln!(
            s,
            r##"<polyline points="{}" fill="none" stroke="#d62728" stroke-width="2" stroke-dasharray="6 4"/>"##,
            curve(optimized)
        );
    }

    let lx = right - 130.0;
    let _ = writeln!(
        s,
        r##"<line x1="{lx}" y1="{top}" x2="{}" y2="{top}" stroke="#1f77b4" stroke-width="2"/><text x="{}" y="{}">lower bound</text>"##,
        lx + 24.0,
        lx + 30.0,
        top + 4.0
    );
    if has_optimized {
        let _ = writeln!(
            s,
            r##"<line x1="{lx}" y1="{}" x2="{}" y2="{}" stroke="#d62728" stroke-width="2" stroke-dasharray="6 4"/><text x="{}" y="{}">optimized</text>"##,
            top + 18.0,
            lx + 24.0,
            top + 18.0,
            lx + 30.0,
            top + 22.0
        );
    }
    s.push_str("</svg>\n");
    s
}

fn extent(v: &[f64]) -> (f64, f64) {
    let lo = v.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if !lo.is_finite() || !hi.is_finite() {
        return (0.0, 1.0);
    }
    if hi - lo < 1e-12 {
        (lo - 0.5, hi + 0.5)
    } else {
        (lo, hi)
    }
}

fn short(x: f64) -> String {
    let s = sig12((x * 1e4).round() / 1e4);
    if s == "-0" {
        "0".into()
    } else {
        s
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plot_contains_both_curves() {
        let rows: Vec<SweepRow> = (0..3)
            .map(|i| SweepRow {
                param_value: i as f64,
                bound: i as f64 * 0.1,
                optimized: Some(i as f64 * 0.2),
                alpha: 1.0,
                lambda_max: 0.5,
                wall_time_ms: None,
            })
            .collect();
        let svg = line_plot("a < b", "p", &rows);
        assert!(svg.starts_with("<svg"));
        assert_eq!(svg.matches("<polyline").count(), 3);
        assert!(svg.contains("a &lt; b"));
        assert!(svg.contains("optimized"));
    }
}
