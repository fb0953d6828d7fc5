//! Bessel functions, the oscillatory moments used by the helical matrix
//! elements, the principal-value cotangent kernel, and quadrature helpers.

pub mod bessel;
pub mod moments;
pub mod pv;
pub mod quadrature;

pub use bessel::{bessel_j, jn, BesselEval};
pub use moments::{oscillatory_moment, shifted_moment, Weight};
pub use pv::{pv_cot_double_integral, pv_cot_offset};
