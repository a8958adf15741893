//! Ordinary Bessel functions of integer order.
//!
//! Tables of J_0(x)..J_M(x) come from Miller's backward recurrence,
//! normalized with J_0 + 2 sum J_2k = 1. Very large arguments fall back to
//! the Hankel expansion (plus upward recurrence when the order is too large
//! for the expansion to converge).

use crate::error::{Result, SbError};
use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI, TAU};

pub const MAX_ORDER: i32 = 1_000_000;

const RESCALE_THRESHOLD: f64 = 1e250;
const RESCALE_FACTOR: f64 = 1e-250;
/// Below this the power series converges in a handful of terms.
const SMALL_ARGUMENT: f64 = 1e-3;
/// Above this Miller's recurrence gets too long; use the Hankel expansion.
const MILLER_MAX_ARGUMENT: f64 = 2e6;

/// Highest order whose J_m(x) is retained in a table. Beyond it
/// |J_m(x)| < 1e-17 for every x (Airy tail with margin).
pub fn order_cut(x: f64) -> usize {
    let a = x.abs();
    (a + 12.0 * (a.cbrt() + 1.0) + 12.0).ceil() as usize
}

fn miller_start(top: usize, x: f64) -> usize {
    let base = (top as f64).max(x).max(1.0);
    let s = (base + (60.0 * base).sqrt() + 16.0).ceil() as usize;
    s + (s & 1)
}

/// Backward recurrence for x > 0, returning J_lo(x)..=J_hi(x).
fn miller(x: f64, lo: usize, hi: usize) -> Vec<f64> {
    let start = miller_start(hi, x);
    let width = hi - lo + 1;
    let mut raw = vec![0.0; width];
    let mut stamp = vec![0u32; width];
    let mut epoch = 0u32;

    let two_over_x = 2.0 / x;
    let mut next = 0.0;
    let mut cur = 1.0;
    let mut norm = 0.0;
    let mut k = start;
    loop {
        if k >= lo && k <= hi {
            raw[k - lo] = cur;
            stamp[k - lo] = epoch;
        }
        if k.is_multiple_of(2) {
            norm += if k == 0 { cur } else { 2.0 * cur };
        }
        if k == 0 {
            break;
        }
        let prev = (k as f64) * two_over_x * cur - next;
        next = cur;
        cur = prev;
        k -= 1;
        if cur.abs() > RESCALE_THRESHOLD {
            cur *= RESCALE_FACTOR;
            next *= RESCALE_FACTOR;
            norm *= RESCALE_FACTOR;
            epoch += 1;
        }
    }

    raw.iter()
        .zip(&stamp)
        .map(|(&f, &s)| {
            let mut f = f;
            for _ in s..epoch {
                f *= RESCALE_FACTOR;
                if f == 0.0 {
                    break;
                }
            }
            f / norm
        })
        .collect()
}

/// Power series for small x: J_m = (x/2)^m / m! sum_j (-x^2/4)^j / (j! (m+1)_j).
fn small_series(x: f64, m: usize) -> f64 {
    let half = 0.5 * x;
    let mut lead = 1.0;
    for j in 1..=m {
        lead *= half / j as f64;
        if lead == 0.0 {
            return 0.0;
        }
    }
    let y = -half * half;
    let mut term = 1.0;
    let mut sum = 1.0;
    for j in 1..20 {
        term *= y / (j as f64 * (m + j) as f64);
        sum += term;
        if term.abs() < 1e-18 * sum.abs() {
            break;
        }
    }
    lead * sum
}

/// Hankel asymptotic expansion, valid for x much larger than nu^2.
fn hankel(nu: usize, x: f64) -> f64 {
    let mu = 4.0 * (nu as f64) * (nu as f64);
    let mut p = 1.0;
    let mut q = 0.0;
    let mut term = 1.0_f64;
    let mut last = f64::INFINITY;
    for j in 1..200 {
        let odd = (2 * j - 1) as f64;
        term *= (mu - odd * odd) / (j as f64 * 8.0 * x);
        if term.abs() > last || term == 0.0 {
            break;
        }
        last = term.abs();
        let sign = if (j / 2) % 2 == 0 { 1.0 } else { -1.0 };
        if j % 2 == 0 {
            p += sign * term;
        } else {
            q += sign * term;
        }
        if term.abs() < 1e-17 {
            break;
        }
    }
    let chi = x.rem_euclid(TAU) - (nu % 4) as f64 * FRAC_PI_2 - FRAC_PI_4;
    (2.0 / (PI * x)).sqrt() * (p * chi.cos() - q * chi.sin())
}

fn large_argument(nu: usize, x: f64) -> f64 {
    if (nu * nu) as f64 <= 0.25 * x {
        return hankel(nu, x);
    }
    let (mut prev, mut cur) = (hankel(0, x), hankel(1, x));
    if nu == 0 {
        return prev;
    }
    for k in 1..nu {
        let next = 2.0 * k as f64 / x * cur - prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Sign factor combining J_{-m} = (-1)^m J_m and J_m(-x) = (-1)^m J_m(x).
#[inline]
fn parity_sign(m: i64, x: f64) -> f64 {
    if m & 1 == 1 && ((m < 0) != (x < 0.0)) {
        -1.0
    } else {
        1.0
    }
}

/// Ordinary Bessel function J_n(x).
pub fn bessel_j(n: i32, x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(SbError::Domain(format!("bessel_j: non-finite argument {x}")));
    }
    if n.abs() > MAX_ORDER {
        return Err(SbError::Domain(format!("bessel_j: order {n} exceeds {MAX_ORDER}")));
    }
    let m = n.unsigned_abs() as usize;
    let ax = x.abs();
    let sign = parity_sign(n as i64, x);
    if ax == 0.0 {
        return Ok(if m == 0 { 1.0 } else { 0.0 });
    }
    let value = if ax < SMALL_ARGUMENT {
        small_series(ax, m)
    } else if ax <= MILLER_MAX_ARGUMENT {
        miller(ax, m, m)[0]
    } else {
        large_argument(m, ax)
    };
    Ok(sign * value)
}

/// J_0(x)..J_M(x) at one argument, with negative orders and arguments
/// resolved through parity on lookup.
#[derive(Debug, Clone)]
pub struct BesselTable {
    x: f64,
    values: Vec<f64>,
}

impl BesselTable {
    /// Table up to [`order_cut`], i.e. every order that is not negligible.
    pub fn new(x: f64) -> Result<Self> {
        Self::with_max_order(x, order_cut(x))
    }

    pub fn with_max_order(x: f64, max_order: usize) -> Result<Self> {
        if !x.is_finite() {
            return Err(SbError::Domain(format!("bessel table: non-finite argument {x}")));
        }
        if x.abs() > MILLER_MAX_ARGUMENT {
            return Err(SbError::Domain(format!("bessel table: argument {x} too large")));
        }
        let ax = x.abs();
        let values = if ax == 0.0 {
            let mut v = vec![0.0; max_order + 1];
            v[0] = 1.0;
            v
        } else if ax < SMALL_ARGUMENT {
            (0..=max_order).map(|m| small_series(ax, m)).collect()
        } else {
            miller(ax, 0, max_order)
        };
        Ok(Self { x, values })
    }

    pub fn argument(&self) -> f64 {
        self.x
    }

    pub fn max_order(&self) -> usize {
        self.values.len() - 1
    }

    /// J_m(x); zero beyond the table.
    #[inline]
    pub fn get(&self, m: i64) -> f64 {
        let a = m.unsigned_abs() as usize;
        match self.values.get(a) {
            Some(&v) => parity_sign(m, self.x) * v,
            None => 0.0,
        }
    }

    /// dJ_m/dx = (J_{m-1} - J_{m+1}) / 2.
    pub fn derivative(&self, m: i64) -> f64 {
        0.5 * (self.get(m - 1) - self.get(m + 1))
    }
}
