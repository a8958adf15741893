//! Fourier transforms of the static scattering potential.
//!
//! Values are in natural units: with e^2 = alpha the screened Coulomb
//! transform 4 pi Za e^2 / (q^2 + chi^2) carries dimension eV^-2.

use crate::error::{Result, SbError};
use crate::kinematics::Vec3;
use crate::units::{momentum_from_atomic_units, u_tilde_from_atomic_units, FINE_STRUCTURE};
use std::f64::consts::PI;
use std::path::Path;

pub const TABLE_HEADER: &str = "# q_au  u_tilde_au";

#[derive(Debug, Clone, PartialEq)]
pub enum PotentialFT {
    /// 4 pi Za e^2 / (q^2 + chi^2), chi in eV.
    ScreenedCoulomb { za: f64, chi: f64 },
    Table(RadialTable),
}

impl PotentialFT {
    pub fn screened_coulomb(za: f64, chi: f64) -> Result<Self> {
        if !(za > 0.0) || !za.is_finite() {
            return Err(SbError::Domain(format!("Za = {za}")));
        }
        if !(chi >= 0.0) || !chi.is_finite() {
            return Err(SbError::Domain(format!("screening chi = {chi} eV")));
        }
        Ok(PotentialFT::ScreenedCoulomb { za, chi })
    }

    pub fn u_tilde(&self, q: &Vec3) -> Result<f64> {
        self.u_tilde_q2(q.norm_squared())
    }

    pub fn u_tilde_q2(&self, q2: f64) -> Result<f64> {
        if !(q2 >= 0.0) || !q2.is_finite() {
            return Err(SbError::Domain(format!("q^2 = {q2}")));
        }
        match self {
            PotentialFT::ScreenedCoulomb { za, chi } => {
                let denom = q2 + chi * chi;
                if denom == 0.0 {
                    return Err(SbError::Singularity("unscreened Coulomb transform at q = 0".into()));
                }
                Ok(4.0 * PI * za * FINE_STRUCTURE / denom)
            }
            PotentialFT::Table(t) => t.eval(q2.sqrt()),
        }
    }
}

/// Radial transform sampled on increasing |q|, interpolated with a
/// monotone piecewise cubic (Fritsch-Carlson).
#[derive(Debug, Clone, PartialEq)]
pub struct RadialTable {
    q: Vec<f64>,
    u: Vec<f64>,
    slope: Vec<f64>,
}

impl RadialTable {
    /// Samples in natural units: q in eV, values in eV^-2.
    pub fn new(q: Vec<f64>, u: Vec<f64>) -> Result<Self> {
        if q.len() != u.len() || q.len() < 2 {
            return Err(SbError::Table("need at least two (q, u) rows of equal length".into()));
        }
        if q.iter().chain(&u).any(|x| !x.is_finite()) || q[0] < 0.0 {
            return Err(SbError::Table("non-finite or negative sample".into()));
        }
        if q.windows(2).any(|w| w[1] <= w[0]) {
            return Err(SbError::Table("q column must be strictly increasing".into()));
        }
        let slope = pchip_slopes(&q, &u);
        Ok(Self { q, u, slope })
    }

    /// Parses the two-column atomic-unit text format.
    pub fn parse_au(text: &str) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        match lines.next() {
            Some(h) if h.split_whitespace().eq(TABLE_HEADER.split_whitespace()) => {}
            _ => return Err(SbError::Table(format!("missing header `{TABLE_HEADER}`"))),
        }
        let (mut q, mut u) = (Vec::new(), Vec::new());
        for (i, line) in lines.enumerate() {
            if line.starts_with('#') {
                continue;
            }
            let cols: Vec<&str> = line.split_whitespace().collect();
            let parse = |s: &str| {
                s.parse::<f64>()
                    .map_err(|_| SbError::Table(format!("row {}: cannot parse `{s}`", i + 1)))
            };
            if cols.len() != 2 {
                return Err(SbError::Table(format!("row {}: expected two columns", i + 1)));
            }
            q.push(momentum_from_atomic_units(parse(cols[0])?));
            u.push(u_tilde_from_atomic_units(parse(cols[1])?));
        }
        Self::new(q, u)
    }

    pub fn load_au(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| SbError::Table(format!("{}: {e}", path.display())))?;
        Self::parse_au(&text)
    }

    pub fn range(&self) -> (f64, f64) {
        (self.q[0], self.q[self.q.len() - 1])
    }

    pub fn eval(&self, q: f64) -> Result<f64> {
        let (min, max) = self.range();
        if !(q >= min && q <= max) {
            return Err(SbError::OutOfRange { q, min, max });
        }
        let i = match self.q.partition_point(|&x| x <= q) {
            0 => 0,
            k if k >= self.q.len() => self.q.len() - 2,
            k => k - 1,
        };
        let h = self.q[i + 1] - self.q[i];
        let t = (q - self.q[i]) / h;
        let (t2, t3) = (t * t, t * t * t);
        let h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
        let h10 = t3 - 2.0 * t2 + t;
        let h01 = -2.0 * t3 + 3.0 * t2;
        let h11 = t3 - t2;
        Ok(h00 * self.u[i] + h10 * h * self.slope[i] + h01 * self.u[i + 1] + h11 * h * self.slope[i + 1])
    }
}

fn pchip_slopes(x: &[f64], y: &[f64]) -> Vec<f64> {
    let n = x.len();
    let h: Vec<f64> = x.windows(2).map(|w| w[1] - w[0]).collect();
    let d: Vec<f64> = (0..n - 1).map(|i| (y[i + 1] - y[i]) / h[i]).collect();
    if n == 2 {
        return vec![d[0]; 2];
    }
    let mut m = vec![0.0; n];
    for i in 1..n - 1 {
        if d[i - 1] * d[i] > 0.0 {
            let w1 = 2.0 * h[i] + h[i - 1];
            let w2 = h[i] + 2.0 * h[i - 1];
            m[i] = (w1 + w2) / (w1 / d[i - 1] + w2 / d[i]);
        }
    }
    let end = |h0: f64, h1: f64, d0: f64, d1: f64| {
        let s = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
        if s * d0 <= 0.0 {
            0.0
        } else if d0 * d1 <= 0.0 && s.abs() > 3.0 * d0.abs() {
            3.0 * d0
        } else {
            s
        }
    };
    m[0] = end(h[0], h[1], d[0], d[1]);
    m[n - 1] = end(h[n - 2], h[n - 3], d[n - 2], d[n - 3]);
    m
}
