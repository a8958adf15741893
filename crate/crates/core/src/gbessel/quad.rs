//! Direct quadrature of the integral representation
//!
//!   J_n(u, v, D) = (2 pi)^-1 \int_{-pi}^{pi} exp{i[u sin(t + D) + v sin 2t - n(t + D)]} dt.
//!
//! The integrand is entire and 2 pi periodic, so the trapezoid rule converges
//! geometrically. Nodes are refined by doubling (old nodes reused) until two
//! successive estimates agree. This path shares no code with the series
//! evaluator and is used as its oracle.

use crate::error::{Result, SbError};
use num_complex::Complex64;
use std::f64::consts::TAU;

/// Absolute accuracy targeted by [`gbessel_quad`].
pub const QUAD_TOLERANCE: f64 = 1e-12;
/// Largest |u| + 2|v| + |n| accepted.
pub const QUAD_MAX_SCALE: f64 = 1e4;
const MAX_NODES: u64 = 1 << 24;

/// Compensated (Neumaier) complex accumulator.
#[derive(Default, Clone, Copy)]
struct Accumulator {
    sum: Complex64,
    carry: Complex64,
}

impl Accumulator {
    fn add(&mut self, z: Complex64) {
        fn step(sum: &mut f64, carry: &mut f64, x: f64) {
            let t = *sum + x;
            if sum.abs() >= x.abs() {
                *carry += (*sum - t) + x;
            } else {
                *carry += (x - t) + *sum;
            }
            *sum = t;
        }
        step(&mut self.sum.re, &mut self.carry.re, z.re);
        step(&mut self.sum.im, &mut self.carry.im, z.im);
    }

    fn total(&self) -> Complex64 {
        self.sum + self.carry
    }
}

/// Oracle evaluation of J_n(u, v, delta) by periodic trapezoid refinement.
pub fn gbessel_quad(n: i32, u: f64, v: f64, delta: f64) -> Result<Complex64> {
    if !(u.is_finite() && v.is_finite() && delta.is_finite()) {
        return Err(SbError::Domain(format!("gbessel_quad: ({n}, {u}, {v}, {delta})")));
    }
    let scale = u.abs() + 2.0 * v.abs() + (n as f64).abs();
    if scale > QUAD_MAX_SCALE {
        return Err(SbError::Domain(format!("gbessel_quad: |u| + 2|v| + |n| = {scale} too large")));
    }

    let (sd, cd) = delta.sin_cos();
    let n64 = n as i64;
    let sign = if n64 & 1 == 0 { 1.0 } else { -1.0 };

    // Node j of N sits at t_j = -pi + 2 pi j / N. The order term is reduced
    // exactly: e^{-i n t_j} = (-1)^n e^{-2 pi i (n j mod N) / N}.
    let node = |j: u64, count: u64| -> Complex64 {
        let s = TAU * (j as f64 / count as f64);
        let (st, ct) = s.sin_cos();
        let (sin_t, cos_t) = (-st, -ct);
        let sin_shift = sin_t * cd + cos_t * sd;
        let two = (2 * j) % count;
        let sin_2t = (TAU * (two as f64 / count as f64)).sin();
        let reduced = ((n64 as i128 * j as i128).rem_euclid(count as i128)) as f64;
        let phase = u * sin_shift + v * sin_2t - TAU * (reduced / count as f64);
        Complex64::from_polar(sign, phase)
    };

    let seed = (8.0 * (1.0 + scale)).ceil() as u64;
    let mut count = seed.max(16).next_power_of_two();
    let mut acc = Accumulator::default();
    for j in 0..count {
        acc.add(node(j, count));
    }
    let mut estimate = acc.total() / count as f64;

    while count < MAX_NODES {
        let finer = 2 * count;
        for j in (1..finer).step_by(2) {
            acc.add(node(j, finer));
        }
        count = finer;
        let refined = acc.total() / count as f64;
        let change = (refined - estimate).norm();
        estimate = refined;
        if change <= QUAD_TOLERANCE {
            return Ok(estimate * Complex64::from_polar(1.0, -(n as f64) * delta));
        }
    }
    Err(SbError::Convergence(format!(
        "gbessel_quad({n}, {u}, {v}, {delta}) did not settle within {MAX_NODES} nodes"
    )))
}
