//! JSON run configuration and its resolution into a core [`Scenario`].

use crate::error::CliError;
use nalgebra::Vector3;
use sbx_core::kinematics::LaserField;
use sbx_core::potential::{PotentialFT, RadialTable};
use sbx_core::scan::NRange;
use sbx_core::units::{intensity_to_k, screening_chi, wavelength_to_photon_energy};
use sbx_core::{Electron, Formula, Geometry, Scenario};
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub laser: LaserConfig,
    pub electron: ElectronConfig,
    pub potential: PotentialConfig,
    pub geometry: GeometryConfig,
    #[serde(default)]
    pub run: RunConfig,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LaserConfig {
    #[serde(rename = "photon_energy_eV", default, skip_serializing_if = "Option::is_none")]
    pub photon_energy_ev: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wavelength_nm: Option<f64>,
    #[serde(rename = "intensity_W_cm2", default, skip_serializing_if = "Option::is_none")]
    pub intensity_w_cm2: Option<f64>,
    #[serde(rename = "K", default, skip_serializing_if = "Option::is_none")]
    pub k: Option<f64>,
    pub zeta: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElectronConfig {
    #[serde(rename = "kinetic_energy_eV")]
    pub kinetic_energy_ev: f64,
    pub direction: [f64; 3],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PotentialConfig {
    #[serde(rename = "Za", default, skip_serializing_if = "Option::is_none")]
    pub za: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub screening_radius_au: Option<f64>,
    /// Relative paths are resolved against the config file's directory.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table_path: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeometryConfig {
    pub deflection_mrad: f64,
    #[serde(default)]
    pub azimuth_deg: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum FormulaName {
    #[default]
    General,
    Circular,
    Linear,
    Nonrel,
    Oracle,
}

impl From<FormulaName> for Formula {
    fn from(f: FormulaName) -> Self {
        match f {
            FormulaName::General => Formula::General,
            FormulaName::Circular => Formula::Circular,
            FormulaName::Linear => Formula::Linear,
            FormulaName::Nonrel => Formula::Nonrel,
            FormulaName::Oracle => Formula::Oracle,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default)]
    pub formula: FormulaName,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_min: Option<i32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_max: Option<i32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k_grid: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tail_cut: Option<f64>,
    #[serde(default)]
    pub output_format: OutputFormat,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output_path: Option<PathBuf>,
}

impl Config {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let c: Config = serde_json::from_str(text).map_err(|e| CliError::Config(e.to_string()))?;
        c.validate()?;
        Ok(c)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    /// Compact single-line JSON, as embedded in output headers.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("config serializes")
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let bad = |m: &str| Err(CliError::Config(m.to_string()));
        let l = &self.laser;
        if l.photon_energy_ev.is_some() == l.wavelength_nm.is_some() {
            return bad("laser: give exactly one of photon_energy_eV, wavelength_nm");
        }
        if l.intensity_w_cm2.is_some() == l.k.is_some() {
            return bad("laser: give exactly one of intensity_W_cm2, K");
        }
        if !(0.0..=1.0).contains(&l.zeta) {
            return bad("laser: zeta must lie in [0, 1]");
        }
        if !(self.geometry.deflection_mrad > 0.0) {
            return bad("geometry: deflection_mrad must be positive");
        }
        let p = &self.potential;
        if p.screening_radius_au.is_some() == p.table_path.is_some() {
            return bad("potential: give exactly one of screening_radius_au, table_path");
        }
        if p.screening_radius_au.is_some() && p.za.is_none() {
            return bad("potential: Za is required with screening_radius_au");
        }
        if self.run.n_min.is_some() != self.run.n_max.is_some() {
            return bad("run: give both n_min and n_max, or neither");
        }
        if let Some(t) = self.run.tail_cut {
            if !(t > 0.0 && t < 1.0) {
                return bad("run: tail_cut must lie in (0, 1)");
            }
        }
        Ok(())
    }

    pub fn n_range(&self) -> NRange {
        match (self.run.n_min, self.run.n_max) {
            (Some(n_min), Some(n_max)) => NRange::Explicit { n_min, n_max },
            _ => NRange::Auto,
        }
    }

    /// Builds the scenario. `base` is the directory relative table paths
    /// are taken from.
    pub fn scenario(&self, base: &Path) -> Result<Scenario, CliError> {
        self.validate()?;
        let cfg = |e: sbx_core::SbError| CliError::Config(e.to_string());
        let l = &self.laser;
        let omega = match (l.photon_energy_ev, l.wavelength_nm) {
            (Some(w), _) => w,
            (_, Some(nm)) => wavelength_to_photon_energy(nm).map_err(cfg)?,
            _ => unreachable!(),
        };
        let k = match (l.k, l.intensity_w_cm2) {
            (Some(k), _) => k,
            (_, Some(i)) => intensity_to_k(i, omega).map_err(cfg)?,
            _ => unreachable!(),
        };
        let laser = LaserField::new(omega, l.zeta, k).map_err(cfg)?;
        let [x, y, z] = self.electron.direction;
        let electron = Electron { kinetic_energy: self.electron.kinetic_energy_ev, direction: Vector3::new(x, y, z) };
        let p = &self.potential;
        let potential = match (&p.screening_radius_au, &p.table_path) {
            (Some(r), _) => PotentialFT::screened_coulomb(p.za.unwrap_or_default(), screening_chi(*r).map_err(cfg)?).map_err(cfg)?,
            (_, Some(path)) => PotentialFT::Table(RadialTable::load_au(&base.join(path)).map_err(cfg)?),
            _ => unreachable!(),
        };
        let geometry = Geometry {
            deflection: self.geometry.deflection_mrad * 1e-3,
            azimuth: self.geometry.azimuth_deg.to_radians(),
        };
        Scenario::new(laser, electron, potential, geometry, self.run.formula.into()).map_err(cfg)
    }

    /// Replaces the intensity specification with a direct K value.
    pub fn set_k(&mut self, k: f64) {
        self.laser.k = Some(k);
        self.laser.intensity_w_cm2 = None;
    }
}
