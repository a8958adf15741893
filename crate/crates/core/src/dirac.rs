//! Brute-force spinor algebra: explicit gamma matrices, free bispinors and
//! the spin-summed squared amplitude, evaluated both as a double sum over
//! polarizations and as a trace.

use crate::error::{Result, SbError};
use crate::kinematics::{Channel, DressedState, FourVector, LaserField};
use crate::scenario::Scenario;
use crate::units::{xs_to_atomic_units, ELECTRON_MASS};
use crate::xsection::d_functions;
use nalgebra::{Matrix2, Matrix4, RowVector4, Vector2, Vector3, Vector4};
use num_complex::Complex64;
use std::f64::consts::PI;
use std::sync::OnceLock;

pub type Matrix = Matrix4<Complex64>;

const C0: Complex64 = Complex64::new(0.0, 0.0);
const C1: Complex64 = Complex64::new(1.0, 0.0);
const CI: Complex64 = Complex64::new(0.0, 1.0);

/// Dirac representation.
#[derive(Debug, Clone, PartialEq)]
pub struct Gamma {
    pub gamma: [Matrix; 4],
}

fn block(a: Matrix2<Complex64>, b: Matrix2<Complex64>, c: Matrix2<Complex64>, d: Matrix2<Complex64>) -> Matrix {
    let mut m = Matrix::zeros();
    m.fixed_view_mut::<2, 2>(0, 0).copy_from(&a);
    m.fixed_view_mut::<2, 2>(0, 2).copy_from(&b);
    m.fixed_view_mut::<2, 2>(2, 0).copy_from(&c);
    m.fixed_view_mut::<2, 2>(2, 2).copy_from(&d);
    m
}

pub fn pauli() -> [Matrix2<Complex64>; 3] {
    [
        Matrix2::new(C0, C1, C1, C0),
        Matrix2::new(C0, -CI, CI, C0),
        Matrix2::new(C1, C0, C0, -C1),
    ]
}

impl Gamma {
    pub fn dirac() -> Self {
        let id = Matrix2::identity();
        let z = Matrix2::zeros();
        let [sx, sy, sz] = pauli();
        Self {
            gamma: [
                block(id, z, z, -id),
                block(z, sx, -sx, z),
                block(z, sy, -sy, z),
                block(z, sz, -sz, z),
            ],
        }
    }

    /// Shared instance.
    pub fn get() -> &'static Gamma {
        static G: OnceLock<Gamma> = OnceLock::new();
        G.get_or_init(Gamma::dirac)
    }

    /// max |{g^mu, g^nu} - 2 g^{mu nu}| over all entries.
    pub fn clifford_residual(&self) -> f64 {
        let metric = [1.0, -1.0, -1.0, -1.0];
        let mut worst = 0.0f64;
        for (mu, g_mu) in metric.iter().enumerate() {
            for nu in 0..4 {
                let a = self.gamma[mu] * self.gamma[nu] + self.gamma[nu] * self.gamma[mu];
                let want = if mu == nu { Matrix::identity() * Complex64::from(2.0 * g_mu) } else { Matrix::zeros() };
                worst = worst.max((a - want).iter().map(|c| c.norm()).fold(0.0, f64::max));
            }
        }
        worst
    }

    /// gamma^0 v^0 - gamma . v
    pub fn slash(&self, v: &FourVector) -> Matrix {
        let g = &self.gamma;
        g[0] * Complex64::from(v.t) - g[1] * Complex64::from(v.x[0]) - g[2] * Complex64::from(v.x[1]) - g[3] * Complex64::from(v.x[2])
    }

    /// Slash of the purely spatial complex vector (0, d): -gamma . d
    pub fn spatial_slash(&self, d: &Vector3<Complex64>) -> Matrix {
        -(self.gamma[1] * d[0] + self.gamma[2] * d[1] + self.gamma[3] * d[2])
    }
}

/// gamma^0 M^dagger gamma^0
pub fn bar(m: &Matrix) -> Matrix {
    let g0 = Gamma::get().gamma[0];
    g0 * m.adjoint() * g0
}

/// Positive-energy free spinor normalized to u-bar u = 2m.
#[derive(Debug, Clone, PartialEq)]
pub struct Bispinor {
    pub components: Vector4<Complex64>,
    pub momentum: FourVector,
    /// 1 = spin up, 2 = spin down along z in the rest frame.
    pub polarization: u8,
}

impl Bispinor {
    pub fn new(momentum: FourVector, polarization: u8) -> Self {
        let chi = match polarization {
            1 => Vector2::new(C1, C0),
            _ => Vector2::new(C0, C1),
        };
        let [sx, sy, sz] = pauli();
        let sp = sx * Complex64::from(momentum.x[0]) + sy * Complex64::from(momentum.x[1]) + sz * Complex64::from(momentum.x[2]);
        let e_m = momentum.t + ELECTRON_MASS;
        let lower = sp * chi / Complex64::from(e_m);
        let norm = Complex64::from(e_m.sqrt());
        Self {
            components: Vector4::new(chi[0], chi[1], lower[0], lower[1]) * norm,
            momentum,
            polarization,
        }
    }

    pub fn bar(&self) -> RowVector4<Complex64> {
        (Gamma::get().gamma[0] * self.components).adjoint()
    }
}

/// Amplitude matrix between free spinors. The spatial D-vector enters as
/// gamma^0 k'-slash D-slash; this placement reproduces the closed form.
pub fn amplitude_matrix(channel: &Channel, laser: &LaserField, dressed: &DressedState) -> Result<Matrix> {
    let g = Gamma::get();
    let d = d_functions(channel, laser, dressed)?;
    let k = laser.wave_vector();
    let k_prime = (k * (1.0 / dressed.kdotp) + k.space_reflected() * (1.0 / channel.kdotp_final)) * 0.5;
    let g0 = g.gamma[0];
    Ok(g0 * d.d_n
        + g.slash(&k) * (d.d2n * (laser.omega * dressed.z / channel.kdotp_final))
        + g0 * g.slash(&k_prime) * g.spatial_slash(&d.dvec))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleEvaluation {
    /// (1/2) sum over polarizations of |u-bar' A u|^2
    pub spin_sum: f64,
    /// 2 Tr{rho' A rho A-bar}
    pub trace: f64,
    /// Cross section in a.u./sr from the spin sum.
    pub value: f64,
}

pub fn oracle_evaluation(s: &Scenario, n: i32) -> Result<OracleEvaluation> {
    let (dressed, ch) = s.channel(n)?;
    let a = amplitude_matrix(&ch, &s.laser, &dressed)?;
    let g = Gamma::get();
    let m = Complex64::from(ELECTRON_MASS);

    let mut spin_sum = 0.0;
    for mu in 1..=2 {
        let uf = Bispinor::new(ch.p_final, mu).bar();
        for nu in 1..=2 {
            let ui = Bispinor::new(dressed.p, nu).components;
            spin_sum += (uf * a * ui)[0].norm_sqr();
        }
    }
    spin_sum *= 0.5;

    let half = Complex64::from(0.5);
    let rho = (g.slash(&dressed.p) + Matrix::identity() * m) * half;
    let rho_f = (g.slash(&ch.p_final) + Matrix::identity() * m) * half;
    let tr = (rho_f * a * rho * bar(&a)).trace() * 2.0;

    let scale = 16.0 * dressed.p.t * ch.p_final.t * a.iter().map(|c| c.norm_sqr()).sum::<f64>();
    if (spin_sum - tr.re).abs() > 1e-10 * spin_sum.abs() + 1e-13 * scale || tr.im.abs() > 1e-10 * tr.re.abs() + 1e-13 * scale {
        return Err(SbError::OracleInconsistency { spin_sum, trace: tr.re });
    }

    let u = s.potential.u_tilde(&ch.q_n)?;
    let pre = ch.pi_n / dressed.pi.x.norm() * u * u / (16.0 * PI * PI);
    Ok(OracleEvaluation { spin_sum, trace: tr.re, value: xs_to_atomic_units(pre * spin_sum) })
}

pub fn xs_oracle(s: &Scenario, n: i32) -> Result<f64> {
    oracle_evaluation(s, n).map(|e| e.value)
}
