//! Spinor-sum oracle against the closed-form cross section on a seeded
//! random grid of open channels.

use nalgebra::Vector3;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use sbx_core::dirac::xs_oracle;
use sbx_core::kinematics::LaserField;
use sbx_core::potential::PotentialFT;
use sbx_core::scan::TAIL_CUT;
use sbx_core::units::screening_chi;
use sbx_core::xsection::partial_xs_general;
use sbx_core::{Electron, Formula, Geometry, Result, Scenario};
use std::fmt::Write;

pub const TOLERANCE: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq)]
pub struct Case {
    pub zeta: f64,
    pub k: f64,
    pub deflection: f64,
    pub direction: [f64; 3],
    pub n: i32,
    pub oracle: f64,
    pub general: f64,
}

impl Case {
    pub fn deviation(&self) -> f64 {
        (self.oracle - self.general).abs() / self.oracle.abs().max(self.general.abs()).max(f64::MIN_POSITIVE)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub seed: u64,
    pub cases: Vec<Case>,
}

impl Report {
    pub fn max_deviation(&self) -> f64 {
        self.cases.iter().map(Case::deviation).fold(0.0, f64::max)
    }

    pub fn passed(&self) -> bool {
        self.max_deviation() < TOLERANCE
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "seed,{}", self.seed);
        let _ = writeln!(s, "zeta,K,deflection_rad,dir_x,dir_y,dir_z,n,oracle_au,general_au,rel_dev");
        for c in &self.cases {
            let d = c.direction;
            let _ = writeln!(
                s,
                "{:e},{:e},{:e},{:e},{:e},{:e},{},{:e},{:e},{:e}",
                c.zeta, c.k, c.deflection, d[0], d[1], d[2], c.n, c.oracle, c.general, c.deviation()
            );
        }
        let _ = writeln!(s, "channels,{}", self.cases.len());
        let _ = writeln!(s, "max_rel_dev,{:e}", self.max_deviation());
        let _ = writeln!(s, "status,{}", if self.passed() { "pass" } else { "fail" });
        s
    }
}

fn scenario(zeta: f64, k: f64, dir: [f64; 3], deflection: f64) -> Result<Scenario> {
    Scenario::new(
        LaserField::new(1.17, zeta, k)?,
        Electron { kinetic_energy: 2700.0, direction: Vector3::from(dir) },
        PotentialFT::screened_coulomb(1.0, screening_chi(4.0)?)?,
        Geometry { deflection, azimuth: 0.3 },
        Formula::General,
    )
}

/// Channels with value at or above the tail cut on a coarse stride.
fn support(s: &Scenario) -> Result<Vec<i32>> {
    let a1 = s.channel(0)?.1.alpha1;
    let reach = (3.0 * a1) as i32 + 50;
    let stride = (reach / 60).max(1) as usize;
    let vals: Vec<(i32, f64)> = (-reach..=reach)
        .step_by(stride)
        .filter_map(|n| partial_xs_general(s, n).ok().map(|x| (n, x.value)))
        .collect();
    let peak = vals.iter().map(|v| v.1).fold(0.0, f64::max);
    Ok(vals.into_iter().filter(|v| v.1 >= TAIL_CUT * peak).map(|v| v.0).collect())
}

pub fn run(seed: u64, count: usize) -> Result<Report> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut specs = Vec::with_capacity(count);
    for _ in 0..count {
        let zeta = [0.0, 0.5, 1.0][rng.gen_range(0..3)];
        let k = [0.01, 0.17, 0.8][rng.gen_range(0..3)];
        let deflection = [6e-4, 6e-3, 6e-2][rng.gen_range(0..3)];
        let direction = match rng.gen_range(0..3) {
            0 => [0.0, 0.0, 1.0],
            1 => [0.0, 0.0, -1.0],
            _ => [rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)],
        };
        let pick: f64 = rng.gen();
        specs.push((zeta, k, deflection, direction, pick));
    }
    let cases: Result<Vec<Case>> = specs
        .into_par_iter()
        .map(|(zeta, k, deflection, direction, pick)| {
            let s = scenario(zeta, k, direction, deflection)?;
            let ns = support(&s)?;
            let n = ns[((pick * ns.len() as f64) as usize).min(ns.len() - 1)];
            Ok(Case { zeta, k, deflection, direction, n, oracle: xs_oracle(&s, n)?, general: partial_xs_general(&s, n)?.value })
        })
        .collect();
    Ok(Report { seed, cases: cases? })
}
