//! Physical constants and unit conversions.
//!
//! Internally everything is in natural units (hbar = c = 1) with energies
//! and momenta in eV and Gaussian charges, so that e^2 equals the
//! fine-structure constant. Cross sections leave the library in atomic
//! units (bohr^2 per steradian).

use crate::error::{Result, SbError};

/// Electron rest energy in eV.
pub const ELECTRON_MASS: f64 = 510_998.95;
/// Fine-structure constant.
pub const FINE_STRUCTURE: f64 = 1.0 / 137.035_999;
/// Inverse Bohr radius as an energy, m * alpha (eV).
pub const BOHR_RADIUS_INVERSE: f64 = ELECTRON_MASS * FINE_STRUCTURE;
/// Hartree energy m * alpha^2 (eV).
pub const HARTREE: f64 = BOHR_RADIUS_INVERSE * FINE_STRUCTURE;
/// hbar * c in eV * m.
pub const HBAR_C: f64 = 197.326_980_4e-9;
/// Speed of light in m/s.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;
/// Vacuum permittivity in F/m.
pub const VACUUM_PERMITTIVITY: f64 = 8.854_187_812_8e-12;

/// Bundle of the constants above, for callers that want them as a value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Constants {
    pub electron_mass: f64,
    pub fine_structure: f64,
    pub hartree: f64,
    pub bohr_radius_inverse: f64,
    pub hbar_c: f64,
}

pub const CONSTANTS: Constants = Constants {
    electron_mass: ELECTRON_MASS,
    fine_structure: FINE_STRUCTURE,
    hartree: HARTREE,
    bohr_radius_inverse: BOHR_RADIUS_INVERSE,
    hbar_c: HBAR_C,
};

/// Peak electric field (V/m) of a wave with the given intensity,
/// I = c eps0 E0^2 / 2 (Gaussian: I = c E0^2 / 8 pi).
fn peak_field(intensity_w_cm2: f64) -> f64 {
    let intensity_w_m2 = intensity_w_cm2 * 1e4;
    (2.0 * intensity_w_m2 / (SPEED_OF_LIGHT * VACUUM_PERMITTIVITY)).sqrt()
}

/// Relativistic intensity parameter K = e A0 / m for a laser of the given
/// intensity (W/cm^2) and photon energy (eV), with E0 = omega A0.
pub fn intensity_to_k(intensity_w_cm2: f64, photon_energy: f64) -> Result<f64> {
    if !(intensity_w_cm2 >= 0.0) || !intensity_w_cm2.is_finite() {
        return Err(SbError::Domain(format!("intensity {intensity_w_cm2} W/cm^2")));
    }
    if !(photon_energy > 0.0) || !photon_energy.is_finite() {
        return Err(SbError::Domain(format!("photon energy {photon_energy} eV")));
    }
    // e E0 [eV/m] * hbar c [eV m] / (m c^2 [eV] * hbar omega [eV])
    Ok(peak_field(intensity_w_cm2) * HBAR_C / (ELECTRON_MASS * photon_energy))
}

/// Inverse of [`intensity_to_k`].
pub fn k_to_intensity(k: f64, photon_energy: f64) -> Result<f64> {
    if !(k >= 0.0) || !k.is_finite() {
        return Err(SbError::Domain(format!("K = {k}")));
    }
    if !(photon_energy > 0.0) || !photon_energy.is_finite() {
        return Err(SbError::Domain(format!("photon energy {photon_energy} eV")));
    }
    let field = k * ELECTRON_MASS * photon_energy / HBAR_C;
    Ok(0.5 * SPEED_OF_LIGHT * VACUUM_PERMITTIVITY * field * field * 1e-4)
}

/// Photon energy (eV) for a vacuum wavelength in nm.
pub fn wavelength_to_photon_energy(wavelength_nm: f64) -> Result<f64> {
    if !(wavelength_nm > 0.0) || !wavelength_nm.is_finite() {
        return Err(SbError::Domain(format!("wavelength {wavelength_nm} nm")));
    }
    Ok(2.0 * std::f64::consts::PI * HBAR_C / (wavelength_nm * 1e-9))
}

/// Cross section in eV^-2 to bohr^2 (per steradian).
pub fn xs_to_atomic_units(xs_natural: f64) -> f64 {
    xs_natural * BOHR_RADIUS_INVERSE * BOHR_RADIUS_INVERSE
}

pub fn xs_from_atomic_units(xs_au: f64) -> f64 {
    xs_au / (BOHR_RADIUS_INVERSE * BOHR_RADIUS_INVERSE)
}

/// Momentum in atomic units (m alpha) to eV.
pub fn momentum_from_atomic_units(q_au: f64) -> f64 {
    q_au * BOHR_RADIUS_INVERSE
}

pub fn momentum_to_atomic_units(q: f64) -> f64 {
    q / BOHR_RADIUS_INVERSE
}

/// Inverse screening length chi (eV) for a screening radius in bohr.
pub fn screening_chi(radius_au: f64) -> Result<f64> {
    if !(radius_au > 0.0) {
        return Err(SbError::Domain(format!("screening radius {radius_au} a.u.")));
    }
    Ok(BOHR_RADIUS_INVERSE / radius_au)
}

/// Fourier transform of a potential, hartree * bohr^3 to eV^-2.
pub fn u_tilde_from_atomic_units(u_au: f64) -> f64 {
    u_au / (ELECTRON_MASS * ELECTRON_MASS * FINE_STRUCTURE)
}

pub fn u_tilde_to_atomic_units(u: f64) -> f64 {
    u * ELECTRON_MASS * ELECTRON_MASS * FINE_STRUCTURE
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bohr_inverse_is_m_alpha() {
        assert_eq!(CONSTANTS.bohr_radius_inverse, ELECTRON_MASS * FINE_STRUCTURE);
        assert!((HARTREE - 27.211_386).abs() < 1e-5);
    }

    #[test]
    fn neodymium_anchor() {
        let k = intensity_to_k(3.5e16, 1.17).unwrap();
        assert!((0.16..=0.18).contains(&k), "K = {k}");
    }

    #[test]
    fn zero_field_and_scaling() {
        assert_eq!(intensity_to_k(0.0, 1.17).unwrap(), 0.0);
        let k1 = intensity_to_k(1e16, 1.17).unwrap();
        let k4 = intensity_to_k(4e16, 1.17).unwrap();
        assert!((k4 / k1 - 2.0).abs() < 1e-14);
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(intensity_to_k(-1.0, 1.17).is_err());
        assert!(intensity_to_k(1e16, 0.0).is_err());
        assert!(intensity_to_k(f64::NAN, 1.0).is_err());
        assert!(k_to_intensity(-0.1, 1.0).is_err());
    }

    #[test]
    fn monotonicity() {
        let a = intensity_to_k(1e15, 1.17).unwrap();
        let b = intensity_to_k(2e15, 1.17).unwrap();
        let c = intensity_to_k(2e15, 2.34).unwrap();
        assert!(b > a && c < b);
    }

    #[test]
    fn round_trips() {
        for &i in &[1e10, 3.5e16, 7.7e19] {
            for &w in &[0.5, 1.17, 3.1] {
                let k = intensity_to_k(i, w).unwrap();
                let back = k_to_intensity(k, w).unwrap();
                assert!((back / i - 1.0).abs() < 1e-12);
            }
        }
        for &x in &[1e-30, 0.37, 12345.0] {
            assert!((xs_to_atomic_units(xs_from_atomic_units(x)) / x - 1.0).abs() < 1e-14);
            let u = u_tilde_to_atomic_units(u_tilde_from_atomic_units(x));
            assert!((u / x - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn xs_unit_value() {
        assert_eq!(xs_to_atomic_units(0.0), 0.0);
        let expected = (510_998.95_f64 / 137.035_999).powi(2);
        assert!((xs_to_atomic_units(1.0) / expected - 1.0).abs() < 1e-15);
        assert!((xs_to_atomic_units(1.0) / 1.3905e7 - 1.0).abs() < 1e-4);
    }

    #[test]
    fn screening_radius_four_bohr() {
        let chi = screening_chi(4.0).unwrap();
        assert!((chi - BOHR_RADIUS_INVERSE / 4.0).abs() < 1e-12);
        assert!(screening_chi(0.0).is_err());
    }
}
