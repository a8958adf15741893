//! CSV and JSON rendering. Floats use shortest round-trip scientific form.

use crate::config::Config;
use sbx_core::scan::{Envelope, KPoint};
use sbx_core::xsection::PartialXS;
use serde_json::{json, Value};
use std::fmt::Write;

pub const ENVELOPE_HEADER: &str = "n,dsigma_au,alpha1,q2_au,term_main,term_recoil,term_wave";
pub const KSWEEP_HEADER: &str = "K,total_au";
pub const CONFIG_PREFIX: &str = "# config: ";

pub fn num(x: f64) -> String {
    format!("{x:e}")
}

fn preamble(config: &Config, header: &str) -> String {
    format!("{CONFIG_PREFIX}{}\n{header}\n", config.to_json())
}

fn row(x: &PartialXS) -> String {
    let t = &x.terms;
    format!(
        "{},{},{},{},{},{},{}\n",
        x.n,
        num(x.value),
        num(x.alpha1),
        num(x.q2),
        num(t.main_energy),
        num(t.recoil),
        num(t.wave_pressure)
    )
}

pub fn partials_csv(config: &Config, entries: &[PartialXS]) -> String {
    let mut out = preamble(config, ENVELOPE_HEADER);
    for e in entries {
        out.push_str(&row(e));
    }
    out
}

pub fn ksweep_csv(config: &Config, points: &[KPoint]) -> String {
    let mut out = preamble(config, KSWEEP_HEADER);
    for p in points {
        let total = p.total.as_ref().copied().unwrap_or(f64::NAN);
        let _ = writeln!(out, "{},{}", num(p.k), num(total));
    }
    out
}

/// Recovers the embedded config from a CSV produced by this tool.
pub fn embedded_config(csv: &str) -> Option<Config> {
    let line = csv.lines().find(|l| l.starts_with(CONFIG_PREFIX))?;
    serde_json::from_str(&line[CONFIG_PREFIX.len()..]).ok()
}

fn partial_json(x: &PartialXS) -> Value {
    json!({
        "n": x.n,
        "dsigma_au": x.value,
        "alpha1": x.alpha1,
        "q2_au": x.q2,
        "term_main": x.terms.main_energy,
        "term_recoil": x.terms.recoil,
        "term_wave": x.terms.wave_pressure,
    })
}

fn finish(v: Value) -> String {
    let mut s = serde_json::to_string_pretty(&v).expect("json value serializes");
    s.push('\n');
    s
}

pub fn partial_json_doc(config: &Config, x: &PartialXS) -> String {
    finish(json!({ "config": config, "partial": partial_json(x) }))
}

pub fn envelope_json(config: &Config, env: &Envelope) -> String {
    finish(json!({
        "config": config,
        "n_peak": env.n_peak,
        "alpha1_at_peak": env.alpha1_at_peak,
        "total_au": env.total,
        "entries": env.entries.iter().map(partial_json).collect::<Vec<_>>(),
    }))
}

pub fn ksweep_json(config: &Config, points: &[KPoint]) -> String {
    let rows: Vec<Value> = points
        .iter()
        .map(|p| match &p.total {
            Ok(t) => json!({ "K": p.k, "total_au": t }),
            Err(e) => json!({ "K": p.k, "error": e.to_string() }),
        })
        .collect();
    finish(json!({ "config": config, "points": rows }))
}

pub fn scalar_json(config: &Config, key: &str, value: f64) -> String {
    finish(json!({ "config": config, key: value }))
}
