use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("longitudinal momentum squared {p2_min:e} is not positive at z = {z:.6}: turning point inside the period")]
    UndulatorRegimeViolation { z: f64, p2_min: f64 },

    #[error("drift root-find did not converge after {iterations} iterations (residual {residual:e})")]
    NonConvergence { iterations: usize, residual: f64 },

    #[error("transverse speed vanishes on the orbit; spin-dependent terms are undefined")]
    DegenerateTransverseMotion,

    #[error("quantum correction {relative:e} exceeds half of the classical frequency")]
    QuantumParameterTooLarge { relative: f64 },

    #[error("Bessel J_{n}({x}) is outside the supported range")]
    OrderOverflow { n: i64, x: f64 },

    #[error("sample sets differ in length ({left} vs {right}) or are not on an even grid")]
    GridMismatch { left: usize, right: usize },

    #[error("harmonic {n} is beyond the validity limit n_cr = {n_cr:.6}")]
    HarmonicBeyondValidity { n: i64, n_cr: f64 },

    #[error("first-order expansion invalid: correction parameter {value:e} >= 0.5")]
    ExpansionInvalid { value: f64 },

    #[error("harmonic {n} has no kinematic support (frequency {omega:e} <= 0)")]
    NoKinematicSupport { n: i64, omega: f64 },

    #[error("near-axis spin condition badly violated: {value:e} > 0.5")]
    PolarizationRegimeViolation { value: f64 },

    #[error("field harmonic quadrature did not converge (difference {difference:e})")]
    HarmonicQuadrature { difference: f64 },

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
