//! Spontaneous radiation of an electron in a periodic magnetic field, to first
//! order in the quantum parameter `chi = hbar*omega0/E`.
//!
//! Internal units: `c = m0 = e0 = 1` and the field period is `l = 2*pi`, so the
//! field wavenumber is one and the drift speed equals `omega0`. Powers come out
//! in units of `e0^2 omega0^2 / c`, frequencies in units of `omega0`.

pub mod error;
pub mod fields;
pub mod helical;
pub mod kinematics;
pub mod spectra;
pub mod specfun;
pub mod spin;

pub use error::{Error, Result};
pub use fields::{FieldKind, FieldModel};
pub use helical::HelixParams;
pub use kinematics::{Direction, Rho, Spin, Trajectory};
pub use spectra::RadiationResult;
pub use spin::SpinResult;

pub use num_complex::Complex64;

/// Period of the field in internal units.
pub const PERIOD: f64 = 2.0 * std::f64::consts::PI;

/// Default fine-structure constant.
pub const ALPHA_FS: f64 = 1.0 / 137.035999;
