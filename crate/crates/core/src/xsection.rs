//! D-functions and the closed-form partial differential cross sections.
//!
//! The general expression is the primary path. The circular and linear
//! specializations are independent reductions used for cross-checking.

use crate::error::{Result, SbError};
use crate::gbessel::{gbessel_row, BesselTable};
use crate::kinematics::{alpha_theta, direction_about, Channel, DressedState, LaserField};
use crate::scenario::Scenario;
use crate::units::{xs_to_atomic_units, ELECTRON_MASS};
use nalgebra::Vector3;
use num_complex::Complex64;
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DFunctions {
    pub d_n: Complex64,
    /// D_{1,n} with the phase anchored at theta(p).
    pub d1n_p: Complex64,
    pub d2n: Complex64,
    pub dvec: Vector3<Complex64>,
    pub dvec_abs2: f64,
}

pub fn d_functions(channel: &Channel, laser: &LaserField, dressed: &DressedState) -> Result<DFunctions> {
    let n = channel.n;
    let row = gbessel_row(n - 2, n + 2, channel.alpha1, -channel.alpha2, channel.theta1)?;
    let j = |m: i32| row.get(m);
    let (_, theta_p) = alpha_theta(&(dressed.pi.x / dressed.kdotp), laser);
    let th = channel.theta1;
    let zeta2 = laser.zeta * laser.zeta;

    let d_n = j(n);
    let d1n_p = 0.5 * (j(n - 1) * Complex64::cis(-(th - theta_p)) + j(n + 1) * Complex64::cis(th - theta_p));
    let d2n = (1.0 + zeta2) * d_n
        + 0.5 * (1.0 - zeta2) * (j(n - 2) * Complex64::cis(-2.0 * th) + j(n + 2) * Complex64::cis(2.0 * th));

    let lower = j(n - 1) * Complex64::cis(-th) * 0.5;
    let upper = j(n + 1) * Complex64::cis(th) * 0.5;
    let i_zeta = Complex64::new(0.0, laser.zeta);
    let e1 = laser.e1.map(Complex64::from);
    let e2 = laser.e2.map(Complex64::from);
    let dvec = ((e1 + e2 * i_zeta) * lower + (e1 - e2 * i_zeta) * upper) * Complex64::from(laser.a0bar);
    let dvec_abs2 = dvec.iter().map(|c| c.norm_sqr()).sum();
    Ok(DFunctions { d_n, d1n_p, d2n, dvec, dvec_abs2 })
}

/// Term breakdown of a partial cross section, a.u./sr.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Terms {
    pub main_energy: f64,
    /// -q^2 |D_n|^2 block.
    pub recoil: f64,
    /// beta^2 block.
    pub wave_pressure: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PartialXS {
    pub n: i32,
    /// d sigma^(n) / d Omega, a.u./sr.
    pub value: f64,
    pub terms: Terms,
    pub alpha1: f64,
    /// q_n^2 in atomic units.
    pub q2: f64,
}

impl PartialXS {
    fn from_terms(n: i32, prefactor: f64, main: f64, recoil: f64, wave: f64, alpha1: f64, q2: f64) -> Self {
        let s = xs_to_atomic_units(prefactor);
        let terms = Terms { main_energy: s * main, recoil: s * recoil, wave_pressure: s * wave };
        Self {
            n,
            value: terms.main_energy + terms.recoil + terms.wave_pressure,
            terms,
            alpha1,
            q2: q2 / crate::units::BOHR_RADIUS_INVERSE.powi(2),
        }
    }
}

/// |Pi'| |U(q)|^2 / ((4 pi)^2 |Pi|)
fn prefactor(s: &Scenario, dressed: &DressedState, channel: &Channel) -> Result<f64> {
    let u = s.potential.u_tilde(&channel.q_n)?;
    Ok(channel.pi_n / dressed.pi.x.norm() * u * u / (16.0 * PI * PI))
}

pub fn partial_xs_general(s: &Scenario, n: i32) -> Result<PartialXS> {
    let (dressed, ch) = s.channel(n)?;
    let laser = &s.laser;
    let d = d_functions(&ch, laser, &dressed)?;
    let (alpha_p, _) = alpha_theta(&(dressed.pi.x / dressed.kdotp), laser);
    let omega = laser.omega;
    let q2 = ch.q2();

    let amp = d.d_n * dressed.p.t + d.d2n * (omega * dressed.z) - d.d1n_p * (omega * alpha_p);
    let main = 4.0 * amp.norm_sqr();
    let recoil = -q2 * d.d_n.norm_sqr();
    let transverse = laser.kvec().cross(&ch.q_n).norm_squared() / (dressed.kdotp * ch.kdotp_final);
    let wave = transverse * (d.dvec_abs2 - 0.5 * laser.a0bar.powi(2) * (d.d_n * d.d2n.conj()).re);

    let pre = prefactor(s, &dressed, &ch)?;
    Ok(PartialXS::from_terms(n, pre, main, recoil, wave, ch.alpha1, q2))
}

/// Circular polarization in terms of ordinary Bessel functions. n J_n / alpha1
/// is evaluated as (J_{n-1} + J_{n+1}) / 2, which keeps alpha1 = 0 regular.
pub fn partial_xs_circular(s: &Scenario, n: i32) -> Result<PartialXS> {
    let laser = &s.laser;
    if laser.zeta != 1.0 {
        return Err(SbError::Precondition(format!("circular formula needs zeta = 1, got {}", laser.zeta)));
    }
    let (dressed, ch) = s.channel(n)?;
    let table = BesselTable::with_max_order(ch.alpha1, n.unsigned_abs() as usize + 1)?;
    let m = n as i64;
    let (jm, j0, jp) = (table.get(m - 1), table.get(m), table.get(m + 1));
    let j_ratio = 0.5 * (jm + jp);
    let j_prime = 0.5 * (jm - jp);

    let (alpha_pi, theta_p) = alpha_theta(&(dressed.pi.x / dressed.kdotp), laser);
    let (sd, cd) = (ch.theta1 - theta_p).sin_cos();
    let omega = laser.omega;
    let q2 = ch.q2();
    let b2 = ch.beta2;

    let main = 4.0 * (dressed.pi.t * j0 - omega * alpha_pi * cd * j_ratio).powi(2)
        + 4.0 * (omega * alpha_pi * sd * j_prime).powi(2);
    let recoil = -q2 * j0 * j0;
    let wave = b2 * (j_ratio * j_ratio - j0 * j0 + j_prime * j_prime);

    let pre = prefactor(s, &dressed, &ch)?;
    Ok(PartialXS::from_terms(n, pre, main, recoil, wave, ch.alpha1, q2))
}

/// Floor on |v| below which the linear closed form refuses.
pub fn v_floor(u: f64) -> f64 {
    1e-6 * u.abs().max(1.0)
}

/// Linear polarization in terms of the real two-argument Bessel function.
/// The 1/v pieces are grouped as (n J_n - u I_n) / v.
pub fn partial_xs_linear(s: &Scenario, n: i32) -> Result<PartialXS> {
    let laser = &s.laser;
    if laser.zeta != 0.0 {
        return Err(SbError::Precondition(format!("linear formula needs zeta = 0, got {}", laser.zeta)));
    }
    let (dressed, ch) = s.channel(n)?;
    let z = dressed.z;
    let v = 0.5 * (z - ch.z_final);
    let rho = ch.pi_final.x / ch.kdotp_final - dressed.pi.x / dressed.kdotp;
    let u = laser.a0bar * rho.dot(&laser.e1);
    let floor = v_floor(u);
    if !(v.abs() > floor) {
        return Err(SbError::RoutedToGeneral { v, floor });
    }
    let row = gbessel_row(n - 1, n + 1, u, v, 0.0)?;
    let j = row.get(n).re;
    let i_n = 0.5 * (row.get(n - 1).re + row.get(n + 1).re);
    let alpha_s = laser.a0bar * dressed.pi.x.dot(&laser.e1) / dressed.kdotp;
    let omega = laser.omega;
    let q2 = ch.q2();
    let b2 = ch.beta2;
    let spread = (n as f64 * j - u * i_n) / v;

    let amp = 2.0 * dressed.pi.t * j - 2.0 * omega * alpha_s * i_n + omega * z * spread;
    let main = amp * amp;
    let recoil = -q2 * j * j;
    let wave = b2 * (i_n * i_n - 0.5 * j * j - 0.25 * j * spread);

    let pre = prefactor(s, &dressed, &ch)?;
    Ok(PartialXS::from_terms(n, pre, main, recoil, wave, ch.alpha1, q2))
}

/// Screened Mott-Born value |U(q)|^2 (4 eps^2 - q^2) / (4 pi)^2, a.u./sr.
pub fn elastic_born(s: &Scenario) -> Result<f64> {
    let m = ELECTRON_MASS;
    let t = s.electron.kinetic_energy;
    let eps = m + t;
    let p = (t * (t + 2.0 * m)).sqrt();
    let q = 2.0 * p * (0.5 * s.geometry.deflection).sin();
    let u = s.potential.u_tilde_q2(q * q)?;
    Ok(xs_to_atomic_units(u * u / (16.0 * PI * PI) * (4.0 * eps * eps - q * q)))
}

/// Nonrelativistic dipole-limit reference with the Born factor
/// (m U / 2 pi)^2 and J_n of the dipole argument.
pub fn partial_xs_nonrel(s: &Scenario, n: i32) -> Result<PartialXS> {
    let m = ELECTRON_MASS;
    let laser = &s.laser;
    let t = s.electron.kinetic_energy;
    let t_final = t + n as f64 * laser.omega;
    if !(t > 0.0) {
        return Err(SbError::Domain(format!("kinetic energy {t} eV")));
    }
    if !(t_final > 0.0) {
        return Err(SbError::ChannelClosed { n });
    }
    let axis = s
        .electron
        .direction
        .try_normalize(0.0)
        .ok_or_else(|| SbError::Domain("electron direction has zero length".into()))?;
    let p = (2.0 * m * t).sqrt();
    let p_final = (2.0 * m * t_final).sqrt();
    let rhat = direction_about(&axis, s.geometry.deflection, s.geometry.azimuth, laser);
    let q = rhat * p_final - axis * p;
    let (alpha_q, _) = alpha_theta(&q, laser);
    let alpha1 = alpha_q / (m * laser.omega);
    let jn = crate::gbessel::bessel_j(n, alpha1)?;
    let u = s.potential.u_tilde(&q)?;
    let value = p_final / p * jn * jn * (m * u / (2.0 * PI)).powi(2);
    Ok(PartialXS::from_terms(n, value, 1.0, 0.0, 0.0, alpha1, q.norm_squared()))
}
