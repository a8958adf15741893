//! Photon-number envelopes, totals and intensity sweeps.

use crate::dirac::oracle_evaluation;
use crate::error::{Result, SbError};
use crate::scenario::{Formula, Scenario};
use crate::xsection::{
    partial_xs_circular, partial_xs_general, partial_xs_linear, partial_xs_nonrel, PartialXS, Terms,
};
use rayon::prelude::*;

pub const TAIL_CUT: f64 = 1e-8;
pub const MAX_K_SWEEP: f64 = 1.5;
/// No envelope side is expanded past this many channels.
pub const MAX_CHANNELS: i32 = 2_000_000;
const CHUNK: i32 = 64;

/// Evaluates one channel with the scenario's formula. The linear form
/// falls back to the general one below its |v| floor.
pub fn partial(s: &Scenario, n: i32) -> Result<PartialXS> {
    match s.formula {
        Formula::General => partial_xs_general(s, n),
        Formula::Circular => partial_xs_circular(s, n),
        Formula::Linear => match partial_xs_linear(s, n) {
            Err(SbError::RoutedToGeneral { .. }) => partial_xs_general(s, n),
            r => r,
        },
        Formula::Nonrel => partial_xs_nonrel(s, n),
        Formula::Oracle => {
            let value = oracle_evaluation(s, n)?.value;
            let (_, ch) = s.channel(n)?;
            Ok(PartialXS {
                n,
                value,
                terms: Terms { main_energy: value, ..Terms::default() },
                alpha1: ch.alpha1,
                q2: ch.q2() / crate::units::BOHR_RADIUS_INVERSE.powi(2),
            })
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NRange {
    Auto,
    Explicit { n_min: i32, n_max: i32 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnvelopeOptions {
    /// Relative cut against the running maximum.
    pub tail_cut: f64,
    /// Multiplies the 10 (alpha1^(1/3) + 1) margin beyond alpha1.
    pub margin_scale: f64,
}

impl Default for EnvelopeOptions {
    fn default() -> Self {
        Self { tail_cut: TAIL_CUT, margin_scale: 1.0 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Envelope {
    /// Ascending in n.
    pub entries: Vec<PartialXS>,
    pub n_peak: i32,
    pub alpha1_at_peak: f64,
    pub total: f64,
}

impl Envelope {
    fn from_entries(entries: Vec<PartialXS>) -> Result<Self> {
        let peak = entries
            .iter()
            .fold(None::<&PartialXS>, |best, e| match best {
                Some(b) if b.value >= e.value => Some(b),
                _ => Some(e),
            })
            .ok_or(SbError::NoOpenChannels)?;
        let (n_peak, alpha1_at_peak) = (peak.n, peak.alpha1);
        let total = entries.iter().map(|e| e.value).sum();
        Ok(Self { entries, n_peak, alpha1_at_peak, total })
    }

    pub fn get(&self, n: i32) -> Option<&PartialXS> {
        self.entries.iter().find(|e| e.n == n)
    }
}

pub fn envelope(s: &Scenario, range: NRange) -> Result<Envelope> {
    envelope_with(s, range, EnvelopeOptions::default())
}

pub fn envelope_with(s: &Scenario, range: NRange, opts: EnvelopeOptions) -> Result<Envelope> {
    s.validate()?;
    match range {
        NRange::Explicit { n_min, n_max } => {
            if n_min > n_max {
                return Err(SbError::Domain(format!("empty channel range [{n_min}, {n_max}]")));
            }
            let results: Vec<Result<PartialXS>> = (n_min..=n_max).into_par_iter().map(|n| partial(s, n)).collect();
            let mut entries = Vec::with_capacity(results.len());
            for r in results {
                match r {
                    Ok(x) => entries.push(x),
                    Err(SbError::ChannelClosed { .. }) => {}
                    Err(e) => return Err(e),
                }
            }
            Envelope::from_entries(entries)
        }
        NRange::Auto => {
            let center = match partial(s, 0) {
                Ok(x) => x,
                Err(SbError::ChannelClosed { .. }) => return Err(SbError::NoOpenChannels),
                Err(e) => return Err(e),
            };
            if s.laser.a0bar == 0.0 {
                return Envelope::from_entries(vec![center]);
            }
            let (left, right) = rayon::join(|| expand_side(s, -1, &center, opts), || expand_side(s, 1, &center, opts));
            let mut entries = left?;
            entries.reverse();
            entries.push(center);
            entries.extend(right?);
            Envelope::from_entries(entries)
        }
    }
}

fn expand_side(s: &Scenario, dir: i32, center: &PartialXS, opts: EnvelopeOptions) -> Result<Vec<PartialXS>> {
    let mut out = Vec::new();
    let mut running = center.value;
    let mut start = dir;
    loop {
        let batch: Vec<(i32, Result<PartialXS>)> = (0..CHUNK)
            .into_par_iter()
            .map(|i| {
                let n = start + dir * i;
                (n, partial(s, n))
            })
            .collect();
        for (n, r) in batch {
            let x = match r {
                Ok(x) => x,
                Err(SbError::ChannelClosed { .. }) => return Ok(out),
                Err(e) => return Err(e),
            };
            running = running.max(x.value);
            let a = x.alpha1;
            let margin = opts.margin_scale * 10.0 * (a.cbrt() + 1.0);
            let done = x.value < opts.tail_cut * running && n.unsigned_abs() as f64 > a + margin;
            out.push(x);
            if done {
                return Ok(out);
            }
        }
        start += dir * CHUNK;
        if start.abs() > MAX_CHANNELS {
            return Err(SbError::Convergence(format!("envelope tail not reached within {MAX_CHANNELS} channels")));
        }
    }
}

pub fn total_xs(s: &Scenario) -> Result<f64> {
    Ok(envelope(s, NRange::Auto)?.total)
}

#[derive(Debug, Clone, PartialEq)]
pub struct KPoint {
    pub k: f64,
    pub total: Result<f64>,
}

/// Totals over an ascending grid of K in (0, 1.5]. Out-of-range points and
/// evaluation failures are reported per entry.
pub fn k_sweep(s: &Scenario, grid: &[f64]) -> Result<Vec<KPoint>> {
    if grid.windows(2).any(|w| !(w[0] <= w[1])) {
        return Err(SbError::Precondition("K grid must be sorted ascending".into()));
    }
    Ok(grid
        .par_iter()
        .map(|&k| {
            let total = if k > 0.0 && k <= MAX_K_SWEEP {
                s.with_k(k).and_then(|t| total_xs(&t))
            } else {
                Err(SbError::Domain(format!("K = {k} outside (0, {MAX_K_SWEEP}]")))
            };
            KPoint { k, total }
        })
        .collect())
}
