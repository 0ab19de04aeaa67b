//! Sampling and rendering of a function over an interval.

use std::fmt::Write as _;

use thiserror::Error;
use uniopt::{Interval, Univariate};

use crate::format::sig6;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PlotError {
    #[error("need at least 2 samples, got {0}")]
    TooFewSamples(usize),
    #[error("AllPointsFault: f could not be evaluated at any of the {0} sample points")]
    AllPointsFault(usize),
}

/// Sampled curve. `y` is `None` where `f` faulted or was not finite.
#[derive(Debug, Clone, PartialEq)]
pub struct PlotSeries {
    pub points: Vec<(f64, Option<f64>)>,
}

impl PlotSeries {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn gaps(&self) -> usize {
        self.points.iter().filter(|(_, y)| y.is_none()).count()
    }

    /// Maximal runs of consecutive evaluable samples.
    pub fn runs(&self) -> Vec<Vec<(f64, f64)>> {
        let mut runs = Vec::new();
        let mut current = Vec::new();
        for &(x, y) in &self.points {
            match y {
                Some(y) => current.push((x, y)),
                None => {
                    if !current.is_empty() {
                        runs.push(std::mem::take(&mut current));
                    }
                }
            }
        }
        if !current.is_empty() {
            runs.push(current);
        }
        runs
    }

    /// Rescales every abscissa by `factor`; used for degree output.
    pub fn scale_x(&mut self, factor: f64) {
        for p in &mut self.points {
            p.0 *= factor;
        }
    }
}

/// `n` equally spaced samples, the first at `lo` and the last exactly at `hi`.
pub fn sample<F: Univariate<f64> + ?Sized>(f: &F, iv: Interval<f64>, n: usize) -> Result<PlotSeries, PlotError> {
    if n < 2 {
        return Err(PlotError::TooFewSamples(n));
    }
    let (lo, hi) = (iv.lo(), iv.hi());
    let last = (n - 1) as f64;
    let points: Vec<(f64, Option<f64>)> = (0..n)
        .map(|i| {
            let x = if i == n - 1 { hi } else { lo + (hi - lo) * (i as f64) / last };
            let y = f.eval(x).ok().filter(|y| y.is_finite());
            (x, y)
        })
        .collect();
    if points.iter().all(|(_, y)| y.is_none()) {
        return Err(PlotError::AllPointsFault(n));
    }
    Ok(PlotSeries { points })
}

fn shortest(v: f64) -> String {
    let mut buf = ryu::Buffer::new();
    buf.format(v).to_string()
}

/// Two columns `x,y`, LF line endings. Faulting samples leave `y` empty.
pub fn emit_csv(series: &PlotSeries) -> String {
    let mut out = String::from("x,y\n");
    for &(x, y) in &series.points {
        out.push_str(&shortest(x));
        out.push(',');
        if let Some(y) = y {
            out.push_str(&shortest(y));
        }
        out.push('\n');
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct Marker {
    pub x: f64,
    pub y: f64,
    pub label: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SvgOptions {
    pub width: u32,
    pub height: u32,
    pub title: String,
    pub markers: Vec<Marker>,
}

const MARGIN_LEFT: f64 = 70.0;
const MARGIN_RIGHT: f64 = 20.0;
const MARGIN_TOP: f64 = 30.0;
const MARGIN_BOTTOM: f64 = 50.0;

fn nice_step(range: f64, target: usize) -> f64 {
    let raw = range / target as f64;
    let mag = 10f64.powf(raw.log10().floor());
    let frac = raw / mag;
    let nice = if frac <= 1.0 {
        1.0
    } else if frac <= 2.0 {
        2.0
    } else if frac <= 5.0 {
        5.0
    } else {
        10.0
    };
    nice * mag
}

fn ticks(lo: f64, hi: f64) -> Vec<f64> {
    let step = nice_step(hi - lo, 5);
    let first = (lo / step).ceil() as i64;
    let last = (hi / step).floor() as i64;
    (first..=last)
        .map(|k| {
            let t = k as f64 * step;
            // Snap -0 and rounding residue like 0.30000000000000004.
            let t = (t / step).round() * step;
            if t == 0.0 {
                0.0
            } else {
                t
            }
        })
        .collect()
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

fn padded(lo: f64, hi: f64) -> (f64, f64) {
    if hi > lo {
        let pad = 0.05 * (hi - lo);
        (lo - pad, hi + pad)
    } else {
        let pad = if lo == 0.0 { 1.0 } else { 0.1 * lo.abs() };
        (lo - pad, hi + pad)
    }
}

/// Standalone SVG document with axes, ticks, one polyline per evaluable run
/// and labelled markers. Output depends only on the inputs.
pub fn emit_svg(series: &PlotSeries, opts: &SvgOptions) -> String {
    let w = f64::from(opts.width.max(200));
    let h = f64::from(opts.height.max(150));
    let plot_w = w - MARGIN_LEFT - MARGIN_RIGHT;
    let plot_h = h - MARGIN_TOP - MARGIN_BOTTOM;

    let x_lo = series.points.first().map_or(0.0, |p| p.0);
    let x_hi = series.points.last().map_or(1.0, |p| p.0);
    let (x_lo, x_hi) = if x_hi > x_lo { (x_lo, x_hi) } else { padded(x_lo, x_hi) };
    let ys = series
        .points
        .iter()
        .filter_map(|p| p.1)
        .chain(opts.markers.iter().map(|m| m.y));
    let (y_min, y_max) = ys.fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), y| (a.min(y), b.max(y)));
    let (y_lo, y_hi) = if y_min.is_finite() { padded(y_min, y_max) } else { (-1.0, 1.0) };

    let px = |x: f64| MARGIN_LEFT + (x - x_lo) / (x_hi - x_lo) * plot_w;
    let py = |y: f64| MARGIN_TOP + (y_hi - y) / (y_hi - y_lo) * plot_h;

    let mut s = String::new();
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">"
    );
    let _ = writeln!(s, "<title>{}</title>", escape(&opts.title));
    let _ = writeln!(s, "<rect x=\"0\" y=\"0\" width=\"{w}\" height=\"{h}\" fill=\"white\"/>");
    let _ = writeln!(
        s,
        "<text x=\"{:.2}\" y=\"20\" font-family=\"sans-serif\" font-size=\"14\" text-anchor=\"middle\">{}</text>",
        MARGIN_LEFT + plot_w / 2.0,
        escape(&opts.title)
    );

    let (left, right) = (MARGIN_LEFT, MARGIN_LEFT + plot_w);
    let (top, bottom) = (MARGIN_TOP, MARGIN_TOP + plot_h);
    s.push_str("<g stroke=\"black\" stroke-width=\"1\">\n");
    let _ = writeln!(s, "<line x1=\"{left:.2}\" y1=\"{bottom:.2}\" x2=\"{right:.2}\" y2=\"{bottom:.2}\"/>");
    let _ = writeln!(s, "<line x1=\"{left:.2}\" y1=\"{top:.2}\" x2=\"{left:.2}\" y2=\"{bottom:.2}\"/>");
    s.push_str("</g>\n");

    s.push_str("<g font-family=\"sans-serif\" font-size=\"11\" fill=\"black\">\n");
    for t in ticks(x_lo, x_hi) {
        let x = px(t);
        let _ = writeln!(
            s,
            "<line x1=\"{x:.2}\" y1=\"{bottom:.2}\" x2=\"{x:.2}\" y2=\"{:.2}\" stroke=\"black\"/>",
            bottom + 5.0
        );
        let _ = writeln!(
            s,
            "<text x=\"{x:.2}\" y=\"{:.2}\" text-anchor=\"middle\">{}</text>",
            bottom + 18.0,
            sig6(t)
        );
    }
    for t in ticks(y_lo, y_hi) {
        let y = py(t);
        let _ = writeln!(
            s,
            "<line x1=\"{:.2}\" y1=\"{y:.2}\" x2=\"{left:.2}\" y2=\"{y:.2}\" stroke=\"black\"/>",
            left - 5.0
        );
        let _ = writeln!(
            s,
            "<text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"end\">{}</text>",
            left - 8.0,
            y + 4.0,
            sig6(t)
        );
    }
    s.push_str("</g>\n");

    for run in series.runs() {
        let pts: Vec<String> = run.iter().map(|&(x, y)| format!("{:.2},{:.2}", px(x), py(y))).collect();
        let _ = writeln!(
            s,
            "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\" points=\"{}\"/>",
            pts.join(" ")
        );
    }

    for m in &opts.markers {
        let (cx, cy) = (px(m.x), py(m.y));
        let _ = writeln!(s, "<circle cx=\"{cx:.2}\" cy=\"{cy:.2}\" r=\"4\" fill=\"#d62728\"/>");
        let _ = writeln!(
            s,
            "<text x=\"{:.2}\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"11\" fill=\"#d62728\">{}</text>",
            cx + 6.0,
            cy - 6.0,
            escape(&m.label)
        );
    }
    s.push_str("</svg>\n");
    s
}
