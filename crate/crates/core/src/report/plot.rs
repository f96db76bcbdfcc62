//! SVG rendering of a sweep table: I(epsilon) against epsilon with error bars.

use std::fmt::Write as _;

use rug::Float;

use super::table::SweepRow;
use crate::error::{Error, Result};

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 440.0;
const LEFT: f64 = 110.0;
const RIGHT: f64 = 30.0;
const TOP: f64 = 30.0;
const BOTTOM: f64 = 60.0;
const TICKS: usize = 5;

struct Point {
    x: f64,
    y: f64,
    err: f64,
}

/// Renders the non-failed rows. The y axis is drawn relative to the first
/// value when the spread is far below its magnitude, so tiny variations stay
/// visible.
pub fn render_svg(rows: &[SweepRow]) -> Result<String> {
    let points: Vec<Point> = rows
        .iter()
        .filter(|r| !r.failed)
        .map(|r| {
            let y = Float::parse(&r.i_value)
                .map(|p| Float::with_val(64, p).to_f64())
                .map_err(|_| Error::Parse(format!("bad i_value {:?}", r.i_value)))?;
            Ok(Point {
                x: r.eps,
                y,
                err: r.err_bound.unwrap_or(0.0),
            })
        })
        .collect::<Result<_>>()?;
    if points.is_empty() {
        return Err(Error::Parse("nothing to plot".into()));
    }

    let offset = points[0].y;
    let (mut y_lo, mut y_hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for p in &points {
        y_lo = y_lo.min(p.y - offset - p.err);
        y_hi = y_hi.max(p.y - offset + p.err);
    }
    let pad = ((y_hi - y_lo) * 0.08).max(offset.abs() * 1e-15).max(1e-300);
    y_lo -= pad;
    y_hi += pad;
    let (mut x_lo, mut x_hi) = points.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), p| (a.min(p.x), b.max(p.x)));
    if x_hi <= x_lo {
        x_lo -= 0.01;
        x_hi += 0.01;
    }
    let plot_w = WIDTH - LEFT - RIGHT;
    let plot_h = HEIGHT - TOP - BOTTOM;
    let sx = |x: f64| LEFT + (x - x_lo) / (x_hi - x_lo) * plot_w;
    let sy = |y: f64| TOP + (y_hi - y) / (y_hi - y_lo) * plot_h;

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(s, r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<rect x="{LEFT}" y="{TOP}" width="{plot_w}" height="{plot_h}" fill="none" stroke="black"/>"#
    );
    for k in 0..=TICKS {
        let fx = x_lo + (x_hi - x_lo) * k as f64 / TICKS as f64;
        let fy = y_lo + (y_hi - y_lo) * k as f64 / TICKS as f64;
        let (px, py) = (sx(fx), sy(fy));
        let _ = writeln!(
            s,
            r#"<line x1="{px:.2}" y1="{b:.2}" x2="{px:.2}" y2="{b2:.2}" stroke="black"/><text x="{px:.2}" y="{t:.2}" text-anchor="middle">{fx:.3}</text>"#,
            b = TOP + plot_h,
            b2 = TOP + plot_h + 5.0,
            t = TOP + plot_h + 20.0
        );
        let _ = writeln!(
            s,
            r#"<line x1="{l:.2}" y1="{py:.2}" x2="{LEFT}" y2="{py:.2}" stroke="black"/><text x="{t:.2}" y="{py2:.2}" text-anchor="end">{fy:+.2e}</text>"#,
            l = LEFT - 5.0,
            t = LEFT - 8.0,
            py2 = py + 4.0
        );
    }
    let _ = writeln!(
        s,
        r#"<text x="{x:.2}" y="{y:.2}" text-anchor="middle">epsilon</text>"#,
        x = LEFT + plot_w / 2.0,
        y = HEIGHT - 15.0
    );
    let _ = writeln!(
        s,
        r#"<text x="20" y="{y:.2}" text-anchor="middle" transform="rotate(-90 20 {y:.2})">I(epsilon)</text>"#,
        y = TOP + plot_h / 2.0
    );
    let _ = writeln!(
        s,
        r#"<text x="{LEFT}" y="{y:.2}">offset {offset:.17}</text>"#,
        y = TOP - 10.0
    );

    let _ = writeln!(s, r#"<g class="series" stroke="steelblue" fill="steelblue">"#);
    let path: Vec<String> = points
        .iter()
        .map(|p| format!("{:.2},{:.2}", sx(p.x), sy(p.y - offset)))
        .collect();
    let _ = writeln!(s, r#"<polyline fill="none" points="{}"/>"#, path.join(" "));
    for p in &points {
        let (px, py) = (sx(p.x), sy(p.y - offset));
        let _ = writeln!(
            s,
            r#"<line class="errorbar" x1="{px:.2}" y1="{a:.2}" x2="{px:.2}" y2="{b:.2}"/>"#,
            a = sy(p.y - offset + p.err),
            b = sy(p.y - offset - p.err)
        );
        let _ = writeln!(s, r#"<circle class="point" cx="{px:.2}" cy="{py:.2}" r="3"/>"#);
    }
    let _ = writeln!(s, "</g>");
    s.push_str("</svg>\n");
    Ok(s)
}
