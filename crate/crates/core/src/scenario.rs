use crate::error::{Result, SbError};
use crate::kinematics::{deflection_frame, dress, open_channel, Channel, DressedState, LaserField, Vec3};
use crate::potential::PotentialFT;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Formula {
    General,
    Circular,
    Linear,
    Nonrel,
    Oracle,
}

impl Formula {
    pub fn name(self) -> &'static str {
        match self {
            Formula::General => "general",
            Formula::Circular => "circular",
            Formula::Linear => "linear",
            Formula::Nonrel => "nonrel",
            Formula::Oracle => "oracle",
        }
    }
}

impl std::str::FromStr for Formula {
    type Err = SbError;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "general" => Formula::General,
            "circular" => Formula::Circular,
            "linear" => Formula::Linear,
            "nonrel" => Formula::Nonrel,
            "oracle" => Formula::Oracle,
            _ => return Err(SbError::Domain(format!("unknown formula `{s}`"))),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Electron {
    /// eV
    pub kinetic_energy: f64,
    pub direction: Vec3,
}

/// Scattering direction relative to the initial quasimomentum (radians).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Geometry {
    pub deflection: f64,
    pub azimuth: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub laser: LaserField,
    pub electron: Electron,
    pub potential: PotentialFT,
    pub geometry: Geometry,
    pub formula: Formula,
}

impl Scenario {
    pub fn new(
        laser: LaserField,
        electron: Electron,
        potential: PotentialFT,
        geometry: Geometry,
        formula: Formula,
    ) -> Result<Self> {
        let s = Self { laser, electron, potential, geometry, formula };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        match self.formula {
            Formula::Circular if self.laser.zeta != 1.0 => {
                return Err(SbError::Precondition(format!("circular formula needs zeta = 1, got {}", self.laser.zeta)))
            }
            Formula::Linear if self.laser.zeta != 0.0 => {
                return Err(SbError::Precondition(format!("linear formula needs zeta = 0, got {}", self.laser.zeta)))
            }
            _ => {}
        }
        let g = self.geometry;
        if !(0.0..=std::f64::consts::PI).contains(&g.deflection) || !g.azimuth.is_finite() {
            return Err(SbError::Domain(format!("geometry ({}, {})", g.deflection, g.azimuth)));
        }
        self.dressed().map(|_| ())
    }

    pub fn with_k(&self, k_param: f64) -> Result<Self> {
        let mut s = self.clone();
        s.laser = self.laser.with_k(k_param)?;
        Ok(s)
    }

    pub fn with_formula(&self, formula: Formula) -> Result<Self> {
        let mut s = self.clone();
        s.formula = formula;
        s.validate()?;
        Ok(s)
    }

    pub fn dressed(&self) -> Result<DressedState> {
        dress(self.electron.kinetic_energy, &self.electron.direction, &self.laser)
    }

    pub fn rhat(&self, dressed: &DressedState) -> Vec3 {
        deflection_frame(dressed, self.geometry.deflection, self.geometry.azimuth, &self.laser)
    }

    pub fn channel(&self, n: i32) -> Result<(DressedState, Channel)> {
        let d = self.dressed()?;
        let c = open_channel(&d, n, &self.rhat(&d), &self.laser)?;
        Ok((d, c))
    }
}
