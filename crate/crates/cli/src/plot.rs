//! Static SVG rendering of envelope and K-sweep CSV files.

use crate::error::CliError;
use crate::output::{ENVELOPE_HEADER, KSWEEP_HEADER};
use std::fmt::Write;

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 450.0;
const LEFT: f64 = 80.0;
const RIGHT: f64 = 20.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 55.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlotKind {
    Envelope,
    KSweep,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    pub kind: PlotKind,
    pub points: Vec<(f64, f64)>,
}

pub fn parse_csv(text: &str) -> Result<Series, CliError> {
    let mut lines = text.lines().filter(|l| !l.starts_with('#') && !l.trim().is_empty());
    let kind = match lines.next().map(str::trim) {
        Some(ENVELOPE_HEADER) => PlotKind::Envelope,
        Some(KSWEEP_HEADER) => PlotKind::KSweep,
        other => return Err(CliError::Config(format!("plot: unrecognized CSV header {other:?}"))),
    };
    let mut points = Vec::new();
    for line in lines {
        let mut cols = line.split(',');
        let parse = |c: Option<&str>| -> Result<f64, CliError> {
            c.and_then(|s| s.trim().parse().ok())
                .ok_or_else(|| CliError::Config(format!("plot: malformed row `{line}`")))
        };
        let x = parse(cols.next())?;
        let y = parse(cols.next())?;
        let keep = match kind {
            PlotKind::Envelope => y > 0.0 && y.is_finite(),
            PlotKind::KSweep => y.is_finite(),
        };
        if keep {
            points.push((x, y));
        }
    }
    if points.is_empty() {
        return Err(CliError::Config("plot: no plottable rows".into()));
    }
    Ok(Series { kind, points })
}

fn nice_step(span: f64, target: usize) -> f64 {
    let raw = span / target as f64;
    let mag = 10f64.powf(raw.log10().floor());
    let r = raw / mag;
    let f = if r < 1.5 { 1.0 } else if r < 3.5 { 2.0 } else if r < 7.5 { 5.0 } else { 10.0 };
    f * mag
}

fn ticks(lo: f64, hi: f64, target: usize) -> Vec<f64> {
    let step = nice_step((hi - lo).max(f64::MIN_POSITIVE), target);
    let mut t = (lo / step).ceil() * step;
    let mut out = Vec::new();
    while t <= hi + 1e-9 * step {
        out.push(if t.abs() < 1e-12 * step { 0.0 } else { t });
        t += step;
    }
    out
}

fn range(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = values.fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), v| (a.min(v), b.max(v)));
    if hi > lo { (lo, hi) } else { (lo - 0.5, hi + 0.5) }
}

fn label(v: f64) -> String {
    if v == 0.0 {
        "0".into()
    } else if (1e-3..1e4).contains(&v.abs()) {
        let s = format!("{v:.3}");
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        format!("{v:.1e}")
    }
}

pub fn render(series: &Series, title: &str) -> String {
    let log = series.kind == PlotKind::Envelope;
    let ys: Vec<f64> = series.points.iter().map(|p| if log { p.1.log10() } else { p.1 }).collect();
    let (x0, x1) = range(series.points.iter().map(|p| p.0));
    let (mut y0, mut y1) = range(ys.iter().copied());
    if log {
        y0 = y0.floor();
        y1 = y1.ceil();
    } else {
        let pad = 0.05 * (y1 - y0);
        y0 -= pad;
        y1 += pad;
    }
    let pw = WIDTH - LEFT - RIGHT;
    let ph = HEIGHT - TOP - BOTTOM;
    let sx = |x: f64| LEFT + (x - x0) / (x1 - x0) * pw;
    let sy = |y: f64| TOP + (1.0 - (y - y0) / (y1 - y0)) * ph;

    let mut s = String::new();
    let _ = writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#);
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(s, r#"<text x="{:.1}" y="24" text-anchor="middle" font-size="14">{}</text>"#, WIDTH / 2.0, escape(title));
    let _ = writeln!(s, r##"<rect x="{LEFT}" y="{TOP}" width="{pw}" height="{ph}" fill="none" stroke="#333"/>"##);

    for t in ticks(x0, x1, 8) {
        let x = sx(t);
        let _ = writeln!(s, r##"<line x1="{x:.2}" y1="{:.2}" x2="{x:.2}" y2="{:.2}" stroke="#333"/>"##, TOP + ph, TOP + ph + 5.0);
        let _ = writeln!(s, r#"<text x="{x:.2}" y="{:.2}" text-anchor="middle">{}</text>"#, TOP + ph + 19.0, label(t));
    }
    let y_ticks = if log { (y0 as i64..=y1 as i64).step_by(((y1 - y0) / 8.0).ceil().max(1.0) as usize).map(|e| e as f64).collect() } else { ticks(y0, y1, 6) };
    for t in y_ticks {
        let y = sy(t);
        let text = if log { format!("1e{}", t as i64) } else { label(t) };
        let _ = writeln!(s, r##"<line x1="{:.2}" y1="{y:.2}" x2="{LEFT}" y2="{y:.2}" stroke="#333"/>"##, LEFT - 5.0);
        let _ = writeln!(s, r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{text}</text>"#, LEFT - 8.0, y + 4.0);
    }
    let (xl, yl) = match series.kind {
        PlotKind::Envelope => ("photon number n", "dσ/dΩ (a.u.)"),
        PlotKind::KSweep => ("K", "total dσ/dΩ (a.u.)"),
    };
    let _ = writeln!(s, r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">{xl}</text>"#, LEFT + pw / 2.0, HEIGHT - 12.0);
    let _ = writeln!(s, r#"<text x="18" y="{:.1}" text-anchor="middle" transform="rotate(-90 18 {:.1})">{yl}</text>"#, TOP + ph / 2.0, TOP + ph / 2.0);

    let path: Vec<String> = series.points.iter().zip(&ys).map(|(p, &y)| format!("{:.2},{:.2}", sx(p.0), sy(y))).collect();
    let _ = writeln!(s, r##"<polyline fill="none" stroke="#1f5fbf" stroke-width="1.5" points="{}"/>"##, path.join(" "));
    s.push_str("</svg>\n");
    s
}

fn escape(t: &str) -> String {
    t.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
