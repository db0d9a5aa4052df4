//! Output encoders. Numbers are written as decimal strings with a fixed
//! number of significant digits so that identical runs give identical bytes.

use complex_chebyshev::Real;
use serde::Serialize;
use std::io::Write;
use std::path::Path;

pub const SIG_DIGITS: usize = 30;
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub fn dec(x: &Real) -> String {
    x.to_sci_string(SIG_DIGITS)
}

#[derive(Serialize, Clone)]
pub struct Provenance {
    pub version: &'static str,
    pub digits: u32,
    pub threshold: String,
}

pub fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

/// Comma-separated, header row first, LF line endings.
pub fn csv(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for row in rows {
        w.write_record(row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
}

/// Columns appended to every CSV row.
pub const PROVENANCE_COLUMNS: [&str; 3] = ["digits", "threshold", "version"];

impl Provenance {
    pub fn columns(&self) -> [String; 3] {
        [self.digits.to_string(), self.threshold.clone(), self.version.to_string()]
    }
}

pub fn write(out: Option<&Path>, text: &str) -> std::io::Result<()> {
    match out {
        Some(p) => std::fs::write(p, text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    }
}

/// Static SVG scatter: the curve as a closed polyline, zeros as dots.
pub fn svg_scatter(curve: &[(f64, f64)], points: &[(f64, f64)], title: &str) -> String {
    let all = curve.iter().chain(points);
    let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for &(x, y) in all {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    if !x0.is_finite() {
        (x0, x1, y0, y1) = (-1.0, 1.0, -1.0, 1.0);
    }
    let pad = 0.05 * (x1 - x0).max(y1 - y0).max(1e-9);
    let (w, h) = (x1 - x0 + 2.0 * pad, y1 - y0 + 2.0 * pad);
    let dot = 0.006 * w.max(h);
    // flip y so that Im z points up
    let fy = |y: f64| -y;
    let mut s = String::new();
    s.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{:.6} {:.6} {:.6} {:.6}\" width=\"600\" height=\"{:.0}\">\n",
        x0 - pad,
        fy(y1) - pad,
        w,
        h,
        600.0 * h / w
    ));
    s.push_str(&format!("<title>{}</title>\n", escape(title)));
    if !curve.is_empty() {
        let pts: Vec<String> = curve.iter().map(|&(x, y)| format!("{x:.6},{:.6}", fy(y))).collect();
        s.push_str(&format!(
            "<polygon points=\"{}\" fill=\"none\" stroke=\"#1f4e79\" stroke-width=\"{:.6}\"/>\n",
            pts.join(" "),
            dot / 3.0
        ));
    }
    for &(x, y) in points {
        s.push_str(&format!("<circle cx=\"{x:.6}\" cy=\"{:.6}\" r=\"{dot:.6}\" fill=\"#c0392b\"/>\n", fy(y)));
    }
    s.push_str("</svg>\n");
    s
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
