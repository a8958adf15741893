//! Relativistic multiphoton stimulated bremsstrahlung of electrons on a
//! screened electrostatic potential inside a strong plane wave of arbitrary
//! polarization, at first order in the potential.
//!
//! Layout:
//! - [`units`]: constants and laboratory/atomic unit conversions
//! - [`gbessel`]: ordinary and generalized Bessel functions
//! - [`kinematics`]: laser field, dressed states and channel kinematics
//! - [`potential`]: Fourier transforms of the scattering potential
//! - [`xsection`]: closed-form partial cross sections
//! - [`dirac`]: brute-force Dirac trace and spin-sum oracle
//! - [`scan`]: photon-number envelopes and intensity sweeps

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod dirac;
pub mod error;
pub mod gbessel;
pub mod kinematics;
pub mod potential;
pub mod scan;
pub mod units;
pub mod xsection;

mod scenario;

pub use error::{Result, SbError};
pub use scenario::{Electron, Formula, Geometry, Scenario};
