//! Self-contained SVG plots over x ∈ [-1, 1].

use std::fmt::Write;

use crate::table::Point;

/// Errors below this are drawn at the floor of the log axis.
pub const LOG_FLOOR: f64 = 1e-17;

const W: f64 = 720.0;
const H: f64 = 440.0;
const LEFT: f64 = 72.0;
const RIGHT: f64 = 24.0;
const TOP: f64 = 44.0;
const BOTTOM: f64 = 52.0;

struct Frame {
    y_lo: f64,
    y_hi: f64,
}

impl Frame {
    fn px(&self, x: f64) -> f64 {
        LEFT + (x + 1.0) / 2.0 * (W - LEFT - RIGHT)
    }

    fn py(&self, y: f64) -> f64 {
        TOP + (self.y_hi - y) / (self.y_hi - self.y_lo) * (H - TOP - BOTTOM)
    }

    fn polyline(&self, pts: impl Iterator<Item = (f64, f64)>, style: &str) -> String {
        let mut d = String::new();
        for (x, y) in pts {
            let _ = write!(d, "{:.2},{:.2} ", self.px(x), self.py(y));
        }
        format!("<polyline fill=\"none\" {style} points=\"{}\"/>\n", d.trim_end())
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn open(title: &str) -> String {
    let mut s = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{W}\" height=\"{H}\" viewBox=\"0 0 {W} {H}\" font-family=\"sans-serif\" font-size=\"12\">\n"
    );
    let _ = writeln!(s, "<rect width=\"{W}\" height=\"{H}\" fill=\"white\"/>");
    let _ = writeln!(s, "<text x=\"{}\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">{}</text>", W / 2.0, escape(title));
    s
}

fn axes(s: &mut String, f: &Frame, y_ticks: &[(f64, String)]) {
    let (x0, x1, y0, y1) = (LEFT, W - RIGHT, TOP, H - BOTTOM);
    let _ = writeln!(s, "<rect x=\"{x0}\" y=\"{y0}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"black\"/>", x1 - x0, y1 - y0);
    for i in 0..=4 {
        let x = -1.0 + 0.5 * i as f64;
        let px = f.px(x);
        let _ = writeln!(s, "<line x1=\"{px:.2}\" y1=\"{y1}\" x2=\"{px:.2}\" y2=\"{}\" stroke=\"black\"/>", y1 + 5.0);
        let _ = writeln!(s, "<text x=\"{px:.2}\" y=\"{}\" text-anchor=\"middle\">{x}</text>", y1 + 19.0);
    }
    for (y, label) in y_ticks {
        let py = f.py(*y);
        let _ = writeln!(s, "<line x1=\"{}\" y1=\"{py:.2}\" x2=\"{x0}\" y2=\"{py:.2}\" stroke=\"black\"/>", x0 - 5.0);
        let _ = writeln!(s, "<line x1=\"{x0}\" y1=\"{py:.2}\" x2=\"{x1}\" y2=\"{py:.2}\" stroke=\"#dddddd\"/>");
        let _ = writeln!(s, "<text x=\"{}\" y=\"{:.2}\" text-anchor=\"end\">{label}</text>", x0 - 8.0, py + 4.0);
    }
    let _ = writeln!(s, "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">x</text>", (x0 + x1) / 2.0, H - 10.0);
}

fn star(s: &mut String, f: &Frame, x: f64, y: f64) {
    let _ = writeln!(
        s,
        "<text class=\"superpoint\" x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"middle\" font-size=\"16\" fill=\"#c0392b\">*</text>",
        f.px(x),
        f.py(y) + 6.0
    );
}

fn circle(s: &mut String, f: &Frame, x: f64, y: f64, class: &str) {
    let _ = writeln!(
        s,
        "<circle class=\"{class}\" cx=\"{:.2}\" cy=\"{:.2}\" r=\"3.5\" fill=\"none\" stroke=\"#1f4e9a\"/>",
        f.px(x),
        f.py(y)
    );
}

/// Log-scale plot of the `error` column with superpoints as `*` and nodes as `o`.
pub fn error_plot(title: &str, points: &[Point]) -> String {
    let logs: Vec<f64> = points.iter().map(|p| p.error.unwrap_or(0.0).max(LOG_FLOOR).log10()).collect();
    let lo = logs.iter().cloned().fold(f64::INFINITY, f64::min).floor();
    let mut hi = logs.iter().cloned().fold(f64::NEG_INFINITY, f64::max).ceil();
    if hi <= lo {
        hi = lo + 1.0;
    }
    let f = Frame { y_lo: lo, y_hi: hi };
    let step = ((hi - lo) / 8.0).ceil().max(1.0);
    let mut ticks = Vec::new();
    let mut k = lo;
    while k <= hi {
        ticks.push((k, format!("1e{}", k as i64)));
        k += step;
    }
    let mut s = open(title);
    axes(&mut s, &f, &ticks);
    s.push_str(&f.polyline(points.iter().zip(&logs).map(|(p, &y)| (p.x, y)), "stroke=\"black\" stroke-width=\"1.2\""));
    for (p, &y) in points.iter().zip(&logs) {
        if p.is_node {
            circle(&mut s, &f, p.x, y, "node");
        }
        if p.is_superpoint {
            star(&mut s, &f, p.x, y);
        }
    }
    let _ = writeln!(s, "<text x=\"{}\" y=\"{}\" text-anchor=\"end\">* superconvergence points, o nodes</text>", W - RIGHT, H - 10.0);
    s.push_str("</svg>\n");
    s
}

pub struct Curve {
    pub points: Vec<(f64, f64)>,
    pub style: &'static str,
}

/// Linear-scale plot of curves with dashed envelopes and marked extremals.
pub fn profile_plot(title: &str, curves: &[Curve], envelopes: &[Vec<(f64, f64)>], extremals: &[(f64, f64)]) -> String {
    let f = Frame { y_lo: -2.25, y_hi: 2.25 };
    let ticks: Vec<(f64, String)> = (-2..=2).map(|k| (k as f64, k.to_string())).collect();
    let mut s = open(title);
    axes(&mut s, &f, &ticks);
    for e in envelopes {
        s.push_str(&f.polyline(e.iter().copied(), "stroke=\"#888888\" stroke-dasharray=\"6 4\""));
    }
    for c in curves {
        s.push_str(&f.polyline(c.points.iter().copied(), c.style));
    }
    for &(x, y) in extremals {
        circle(&mut s, &f, x, y, "extremal");
    }
    s.push_str("</svg>\n");
    s
}
