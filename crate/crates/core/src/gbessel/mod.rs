//! Generalized Bessel functions J_n(u, v, D): the Fourier coefficients of
//! exp{i[u sin(t + D) + v sin 2t]} with respect to e^{i n (t + D)}.
//!
//! The production path is the series
//!
//!   J_n(u, v, D) = sum_k e^{-2ikD} J_{n-2k}(u) J_k(v),
//!
//! built from two shared tables of ordinary Bessel functions. [`gbessel_quad`]
//! integrates the defining integral directly and is kept as an oracle.

mod ordinary;
mod quad;

pub use ordinary::{bessel_j, order_cut, BesselTable, MAX_ORDER};
pub use quad::{gbessel_quad, QUAD_MAX_SCALE, QUAD_TOLERANCE};

use crate::error::{Result, SbError};
use num_complex::Complex64;
use rayon::prelude::*;

/// Largest |u| or |v| accepted by the series evaluator.
pub const MAX_ARGUMENT: f64 = 1e5;

/// One evaluated J_n(u, v, delta) together with its arguments.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GBesselValue {
    pub value: Complex64,
    pub n: i32,
    pub u: f64,
    pub v: f64,
    pub delta: f64,
}

impl GBesselValue {
    pub fn evaluate(n: i32, u: f64, v: f64, delta: f64) -> Result<Self> {
        Ok(Self { value: gbessel(n, u, v, delta)?, n, u, v, delta })
    }
}

/// Consecutive orders n_min..=n_max at a fixed (u, v, delta).
#[derive(Debug, Clone, PartialEq)]
pub struct GBesselRow {
    pub n_min: i32,
    pub n_max: i32,
    pub values: Vec<Complex64>,
}

impl GBesselRow {
    /// J_n for n inside the row; zero outside.
    pub fn get(&self, n: i32) -> Complex64 {
        if n < self.n_min || n > self.n_max {
            return Complex64::new(0.0, 0.0);
        }
        self.values[(n - self.n_min) as usize]
    }

    pub fn iter(&self) -> impl Iterator<Item = (i32, Complex64)> + '_ {
        (self.n_min..=self.n_max).zip(self.values.iter().copied())
    }

    pub fn norm_sqr_sum(&self) -> f64 {
        self.values.iter().map(|z| z.norm_sqr()).sum()
    }
}

fn check_arguments(u: f64, v: f64, delta: f64) -> Result<()> {
    if !(u.is_finite() && v.is_finite() && delta.is_finite()) {
        return Err(SbError::Domain(format!("gbessel: non-finite argument ({u}, {v}, {delta})")));
    }
    if u.abs() > MAX_ARGUMENT || v.abs() > MAX_ARGUMENT {
        return Err(SbError::Domain(format!("gbessel: |u|, |v| must not exceed {MAX_ARGUMENT}")));
    }
    Ok(())
}

/// Shared state for evaluating many orders at one (u, v, delta).
#[derive(Debug, Clone)]
pub struct GBesselSeries {
    ju: BesselTable,
    jv: BesselTable,
    /// e^{-2ik delta} for k = -k_cut..=k_cut
    phase: Vec<Complex64>,
}

impl GBesselSeries {
    pub fn new(u: f64, v: f64, delta: f64) -> Result<Self> {
        check_arguments(u, v, delta)?;
        let jv = BesselTable::new(v)?;
        let k_cut = jv.max_order() as i64;
        let phase = (-k_cut..=k_cut).map(|k| Complex64::cis(-2.0 * k as f64 * delta)).collect();
        Ok(Self { ju: BesselTable::new(u)?, jv, phase })
    }

    pub fn eval(&self, n: i32) -> Complex64 {
        let n = n as i64;
        let k_cut = self.jv.max_order() as i64;
        let m_cut = self.ju.max_order() as i64;
        // keep |k| <= k_cut and |n - 2k| <= m_cut
        let lo = (-k_cut).max((n - m_cut + 1).div_euclid(2));
        let hi = k_cut.min((n + m_cut).div_euclid(2));
        let (mut re, mut im) = (0.0, 0.0);
        for k in lo..=hi {
            let w = self.ju.get(n - 2 * k) * self.jv.get(k);
            let p = self.phase[(k + k_cut) as usize];
            re += w * p.re;
            im += w * p.im;
        }
        Complex64::new(re, im)
    }
}

/// J_n(u, v, delta) from the Bessel-product series.
pub fn gbessel(n: i32, u: f64, v: f64, delta: f64) -> Result<Complex64> {
    Ok(GBesselSeries::new(u, v, delta)?.eval(n))
}

/// J_n(u, v, delta) for n_min..=n_max, sharing one pair of Bessel tables.
pub fn gbessel_row(n_min: i32, n_max: i32, u: f64, v: f64, delta: f64) -> Result<GBesselRow> {
    if n_min > n_max {
        return Err(SbError::Domain(format!("gbessel_row: n_min {n_min} > n_max {n_max}")));
    }
    let series = GBesselSeries::new(u, v, delta)?;
    let values = if n_max - n_min < 256 {
        (n_min..=n_max).map(|n| series.eval(n)).collect()
    } else {
        (n_min..=n_max).into_par_iter().map(|n| series.eval(n)).collect()
    };
    Ok(GBesselRow { n_min, n_max, values })
}
