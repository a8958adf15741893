//! Laser geometry, dressed (quasimomentum) electron states and the
//! kinematics of the n-photon channels.

use crate::error::{Result, SbError};
use crate::units::ELECTRON_MASS;
use nalgebra::Vector3;
use std::ops::{Add, Mul, Sub};

pub type Vec3 = Vector3<f64>;

const FRAME_TOLERANCE: f64 = 1e-14;

/// Contravariant four-vector with metric (+, -, -, -), components in eV.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FourVector {
    pub t: f64,
    pub x: Vec3,
}

impl FourVector {
    pub fn new(t: f64, x: Vec3) -> Self {
        Self { t, x }
    }

    pub fn dot(&self, other: &FourVector) -> f64 {
        self.t * other.t - self.x.dot(&other.x)
    }

    pub fn norm_sqr(&self) -> f64 {
        self.dot(self)
    }

    /// (t, -x)
    pub fn space_reflected(&self) -> FourVector {
        FourVector::new(self.t, -self.x)
    }
}

impl Add for FourVector {
    type Output = FourVector;
    fn add(self, rhs: FourVector) -> FourVector {
        FourVector::new(self.t + rhs.t, self.x + rhs.x)
    }
}

impl Sub for FourVector {
    type Output = FourVector;
    fn sub(self, rhs: FourVector) -> FourVector {
        FourVector::new(self.t - rhs.t, self.x - rhs.x)
    }
}

impl Mul<f64> for FourVector {
    type Output = FourVector;
    fn mul(self, rhs: f64) -> FourVector {
        FourVector::new(self.t * rhs, self.x * rhs)
    }
}

/// Monochromatic plane wave A = A0 (e1 cos phi + zeta e2 sin phi), phi = k x.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LaserField {
    /// Photon energy (eV).
    pub omega: f64,
    /// Polarization parameter: 0 linear, 1 circular.
    pub zeta: f64,
    /// e * A0 in eV, i.e. K * m.
    pub a0bar: f64,
    pub e1: Vec3,
    pub e2: Vec3,
    pub khat: Vec3,
}

impl LaserField {
    /// Wave along z with e1 = x, e2 = y.
    pub fn new(omega: f64, zeta: f64, k_param: f64) -> Result<Self> {
        Self::with_frame(omega, zeta, k_param, Vec3::x(), Vec3::y(), Vec3::z())
    }

    pub fn with_frame(omega: f64, zeta: f64, k_param: f64, e1: Vec3, e2: Vec3, khat: Vec3) -> Result<Self> {
        if !(omega > 0.0) || !omega.is_finite() {
            return Err(SbError::Domain(format!("photon energy {omega} eV")));
        }
        if !(0.0..=1.0).contains(&zeta) {
            return Err(SbError::Domain(format!("zeta = {zeta} outside [0, 1]")));
        }
        if !(k_param >= 0.0) || !k_param.is_finite() {
            return Err(SbError::Domain(format!("K = {k_param}")));
        }
        let unit = |v: &Vec3| (v.norm() - 1.0).abs() <= FRAME_TOLERANCE;
        let orth = |a: &Vec3, b: &Vec3| a.dot(b).abs() <= FRAME_TOLERANCE;
        if !(unit(&e1) && unit(&e2) && unit(&khat) && orth(&e1, &e2) && orth(&e1, &khat) && orth(&e2, &khat)) {
            return Err(SbError::Domain("laser frame (e1, e2, k) is not orthonormal".into()));
        }
        Ok(Self { omega, zeta, a0bar: k_param * ELECTRON_MASS, e1, e2, khat })
    }

    pub fn k_param(&self) -> f64 {
        self.a0bar / ELECTRON_MASS
    }

    pub fn with_k(&self, k_param: f64) -> Result<Self> {
        Self::with_frame(self.omega, self.zeta, k_param, self.e1, self.e2, self.khat)
    }

    /// Wave four-vector k = (omega, omega khat).
    pub fn wave_vector(&self) -> FourVector {
        FourVector::new(self.omega, self.khat * self.omega)
    }

    pub fn kvec(&self) -> Vec3 {
        self.khat * self.omega
    }

    /// (e A0)^2 (1 + zeta^2) / 2, the effective-mass shift.
    pub fn mass_shift_sqr(&self) -> f64 {
        0.5 * self.a0bar * self.a0bar * (1.0 + self.zeta * self.zeta)
    }
}

/// Free electron momentum p with its quasimomentum Pi = p + k Z (1 + zeta^2).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DressedState {
    pub p: FourVector,
    /// Intensity parameter Z = (e A0)^2 / (4 k.p).
    pub z: f64,
    pub pi: FourVector,
    pub kdotp: f64,
}

impl DressedState {
    /// m*^2 = Pi^2
    pub fn effective_mass_sqr(&self) -> f64 {
        self.pi.norm_sqr()
    }
}

/// omega (E - |P| cos) written without cancellation for cos > 0, using
/// E^2 - |P|^2 = mass_sqr.
fn light_cone_product(omega: f64, energy: f64, mass_sqr: f64, mom: &Vec3, khat: &Vec3) -> f64 {
    let along = mom.dot(khat);
    if along <= 0.0 {
        omega * (energy - along)
    } else {
        let cross = mom.cross(khat).norm_squared();
        omega * (mass_sqr + cross) / (energy + along)
    }
}

pub fn dress(kinetic_energy: f64, direction: &Vec3, laser: &LaserField) -> Result<DressedState> {
    if !(kinetic_energy > 0.0) || !kinetic_energy.is_finite() {
        return Err(SbError::Domain(format!("kinetic energy {kinetic_energy} eV")));
    }
    let norm = direction.norm();
    if !(norm > 0.0) || !norm.is_finite() {
        return Err(SbError::Domain("electron direction has zero length".into()));
    }
    let m = ELECTRON_MASS;
    let energy = m + kinetic_energy;
    let momentum = (kinetic_energy * (kinetic_energy + 2.0 * m)).sqrt();
    let p = FourVector::new(energy, direction * (momentum / norm));
    let kdotp = light_cone_product(laser.omega, energy, m * m, &p.x, &laser.khat);
    let z = laser.a0bar * laser.a0bar / (4.0 * kdotp);
    let pi = p + laser.wave_vector() * (z * (1.0 + laser.zeta * laser.zeta));
    Ok(DressedState { p, z, pi, kdotp })
}

/// alpha(rho) = e A0 sqrt((rho.e1)^2 + zeta^2 (rho.e2)^2) and the matching
/// phase theta, resolved to the quadrant of (rho.e1, zeta rho.e2).
pub fn alpha_theta(rho: &Vec3, laser: &LaserField) -> (f64, f64) {
    let x = rho.dot(&laser.e1);
    let y = laser.zeta * rho.dot(&laser.e2);
    let alpha = laser.a0bar * x.hypot(y);
    if alpha == 0.0 {
        (0.0, 0.0)
    } else {
        (alpha, y.atan2(x))
    }
}

/// Unit vector at polar angle `deflection` from `axis`. The azimuth is
/// measured from the projection of e1 onto the plane normal to `axis`
/// (e2 when axis is parallel to e1), so azimuth 0 lies in the (axis, e1)
/// plane.
pub fn direction_about(axis: &Vec3, deflection: f64, azimuth: f64, laser: &LaserField) -> Vec3 {
    let a = match axis.try_normalize(0.0) {
        Some(a) => a,
        None => laser.khat,
    };
    let reference = |e: &Vec3| e - a * e.dot(&a);
    let t1 = match reference(&laser.e1).try_normalize(1e-12) {
        Some(t) => t,
        None => reference(&laser.e2).normalize(),
    };
    let t2 = a.cross(&t1);
    let (sd, cd) = deflection.sin_cos();
    let (sa, ca) = azimuth.sin_cos();
    a * cd + (t1 * ca + t2 * sa) * sd
}

/// Final-state direction r at the given deflection from the initial
/// quasimomentum direction.
pub fn deflection_frame(dressed: &DressedState, deflection: f64, azimuth: f64, laser: &LaserField) -> Vec3 {
    direction_about(&dressed.pi.x, deflection, azimuth, laser)
}

/// Kinematics of the n-photon channel Pi -> Pi' with Pi'_0 = Pi_0 + n omega.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Channel {
    pub n: i32,
    pub pi0_final: f64,
    /// |Pi'|
    pub pi_n: f64,
    pub rhat: Vec3,
    /// q_n = Pi_n r - Pi - n k
    pub q_n: Vec3,
    pub pi_final: FourVector,
    pub p_final: FourVector,
    pub kdotp_final: f64,
    pub z_final: f64,
    pub alpha1: f64,
    pub alpha2: f64,
    pub theta1: f64,
    /// (e A0)^2 [omega^2 q^2 - (k.q)^2] / ((k.p)(k.p'))
    pub beta2: f64,
}

impl Channel {
    pub fn q2(&self) -> f64 {
        self.q_n.norm_squared()
    }
}

pub fn open_channel(dressed: &DressedState, n: i32, rhat: &Vec3, laser: &LaserField) -> Result<Channel> {
    let omega = laser.omega;
    let nw = n as f64 * omega;
    let pi = &dressed.pi;
    let pi0_final = pi.t + nw;
    let radicand = pi.x.norm_squared() + nw * (2.0 * pi.t + nw);
    if !(pi0_final > 0.0) || !(radicand >= 0.0) {
        return Err(SbError::ChannelClosed { n });
    }
    let rhat = rhat
        .try_normalize(0.0)
        .ok_or_else(|| SbError::Domain("final direction has zero length".into()))?;
    let pi_n = radicand.sqrt();
    let pi_final = FourVector::new(pi0_final, rhat * pi_n);

    let mass_sqr = ELECTRON_MASS * ELECTRON_MASS + laser.mass_shift_sqr();
    let kdotp_final = light_cone_product(omega, pi0_final, mass_sqr, &pi_final.x, &laser.khat);
    let a2 = laser.a0bar * laser.a0bar;
    let z_final = a2 / (4.0 * kdotp_final);
    let zeta2 = laser.zeta * laser.zeta;
    let p_final = pi_final - laser.wave_vector() * (z_final * (1.0 + zeta2));

    let kvec = laser.kvec();
    let q_n = pi_final.x - pi.x - kvec * n as f64;
    let rho = pi_final.x / kdotp_final - pi.x / dressed.kdotp;
    let (alpha1, theta1) = alpha_theta(&rho, laser);
    let alpha2 = 0.5 * (z_final - dressed.z) * (1.0 - zeta2);
    let beta2 = a2 * kvec.cross(&q_n).norm_squared() / (dressed.kdotp * kdotp_final);

    Ok(Channel {
        n,
        pi0_final,
        pi_n,
        rhat,
        q_n,
        pi_final,
        p_final,
        kdotp_final,
        z_final,
        alpha1,
        alpha2,
        theta1,
        beta2,
    })
}
