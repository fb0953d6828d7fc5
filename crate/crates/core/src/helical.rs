//! Closed forms for the helical undulator `H = (-H0 cos z, -H0 sin z)`.
//!
//! The orbit is the helix `beta = (b_perp cos w0 t, b_perp sin w0 t, b_par)`.
//! All results are evaluated at azimuth `phi = 0`; the helix is axially
//! symmetric so intensities do not depend on it.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::specfun::{bessel_j, oscillatory_moment, Weight};
use crate::spectra::AngularPower;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HelixParams {
    pub beta_perp: f64,
    pub beta_parallel: f64,
    pub gamma: f64,
    /// `R = beta_perp / beta_par` for unit field wavenumber.
    pub radius: f64,
    pub chi: f64,
}

impl HelixParams {
    pub fn new(beta_parallel: f64, beta_perp: f64, chi: f64) -> Result<Self> {
        let b2 = beta_parallel * beta_parallel + beta_perp * beta_perp;
        if !(beta_parallel > 0.0) || !(beta_perp >= 0.0) || !(b2 < 1.0) {
            return Err(Error::InvalidInput(format!(
                "helix needs 0 < beta_par, 0 <= beta_perp and beta^2 < 1 (got {beta_parallel}, {beta_perp})"
            )));
        }
        if !(chi >= 0.0) {
            return Err(Error::InvalidInput(format!("chi must be >= 0, got {chi}")));
        }
        Ok(HelixParams {
            beta_perp,
            beta_parallel,
            gamma: 1.0 / (1.0 - b2).sqrt(),
            radius: beta_perp / beta_parallel,
            chi,
        })
    }

    /// From the field amplitude and Lorentz factor, `beta_perp = H0 / E`.
    pub fn from_field(h0: f64, gamma: f64, chi: f64) -> Result<Self> {
        if !(gamma > 1.0) {
            return Err(Error::InvalidInput(format!("gamma must exceed 1, got {gamma}")));
        }
        let beta2 = 1.0 - 1.0 / (gamma * gamma);
        let bperp = h0.abs() / gamma;
        let bpar2 = beta2 - bperp * bperp;
        if !(bpar2 > 0.0) {
            return Err(Error::UndulatorRegimeViolation { z: 0.0, p2_min: bpar2 * gamma * gamma });
        }
        Self::new(bpar2.sqrt(), bperp, chi)
    }

    /// Total speed.
    pub fn beta(&self) -> f64 {
        (self.beta_parallel.powi(2) + self.beta_perp.powi(2)).sqrt()
    }

    pub fn psi0(&self, theta: f64) -> f64 {
        1.0 - self.beta_parallel * theta.cos()
    }

    /// Classical Bessel argument `z = n b_perp sin(theta) / psi0`.
    pub fn z(&self, n: i64, theta: f64) -> f64 {
        n as f64 * self.beta_perp * theta.sin() / self.psi0(theta)
    }

    /// `eps = chi n / b_par^2`.
    pub fn eps(&self, n: i64) -> f64 {
        self.chi * n as f64 / self.beta_parallel.powi(2)
    }
}

fn check_angle(theta: f64) -> Result<()> {
    if !(theta > 0.0 && theta < std::f64::consts::PI) {
        return Err(Error::InvalidInput(format!("theta must lie in (0, pi), got {theta}")));
    }
    Ok(())
}

/// Quantum-corrected matrix elements `(1/2pi) int d eta exp(i psi) beta {..}`
/// including the first-order amplitude and phase terms.
pub fn helical_matrix_elements(p: &HelixParams, n: i64, theta: f64) -> Result<[Complex64; 3]> {
    if n < 1 {
        return Err(Error::InvalidInput(format!("harmonic must be >= 1, got {n}")));
    }
    check_angle(theta)?;
    let psi0 = p.psi0(theta);
    let s = p.beta_perp * theta.sin();
    let z = p.z(n, theta);
    let nf = n as f64;
    let eps = p.eps(n);
    let z1 = z * (1.0 + 0.5 * eps * (1.0 - z * z / (2.0 * nf * nf)));
    let z2 = z * s / 8.0;
    let g = 1.0 + eps / (2.0 * psi0);
    let a = eps * s / (2.0 * psi0);
    let q = Complex64::i() * (eps / psi0 * z2);
    let m = |w: Weight| oscillatory_moment(n, z1, w);
    let (m1, mc, ms) = (m(Weight::One)?, m(Weight::Cos)?, m(Weight::Sin)?);
    let b3 = p.beta_parallel * (m1 * g - a * mc + q * m(Weight::Sin2)?);
    let b1 = p.beta_perp * (mc * g - a * m(Weight::CosSq)? + q * m(Weight::Sin2Cos)?);
    let b2 = p.beta_perp * (ms * g - a * m(Weight::SinCos)? + q * m(Weight::Sin2Sin)?);
    Ok([b1, b2, b3])
}

/// Frequency weight `omega^4 / (omega_cl^2 (n/psi0)^2)` to first order.
pub fn frequency_weight(p: &HelixParams, n: i64, theta: f64) -> f64 {
    let psi0 = p.psi0(theta);
    let z = p.z(n, theta);
    let nf = n as f64;
    1.0 - p.eps(n) * (2.0 * (1.0 + p.beta_parallel * theta.cos()) / psi0 + z * z / (nf * nf))
}

/// Polarized intensities `|alpha_pi|^2`, `|alpha_sigma|^2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HelicalIntensity {
    pub pi: f64,
    pub sigma: f64,
    /// Set when the first-order value is negative, i.e. `chi` is outside the
    /// range of the expansion at this point.
    pub negative: bool,
}

/// Closed-form intensities including the first quantum correction.
pub fn helical_spectral_angular(p: &HelixParams, n: i64, theta: f64) -> Result<HelicalIntensity> {
    if n < 1 {
        return Err(Error::InvalidInput(format!("harmonic must be >= 1, got {n}")));
    }
    check_angle(theta)?;
    let (st, ct) = theta.sin_cos();
    let psi0 = p.psi0(theta);
    let z = p.z(n, theta);
    let b = bessel_j(n, z)?;
    let (j, d1, d2) = (b.value, b.d1, b.d2);
    let eps = p.eps(n);
    let r = z * z / (n * n) as f64;
    let pref = ((ct - p.beta_parallel) / st).powi(2);
    let pi = pref * (j * j - eps * (j * j * (1.5 * (1.0 + p.beta_parallel * ct) / psi0 + r) - 0.5 * z * (1.0 - r) * d1 * j));
    let sigma = p.beta_perp.powi(2)
        * (d1 * d1 - eps * (d1 * d1 * ((1.0 + 2.0 * p.beta_parallel * ct) / psi0 + r) - 0.5 * z * (1.0 - r) * d1 * d2));
    Ok(HelicalIntensity { pi, sigma, negative: pi < 0.0 || sigma < 0.0 })
}

/// The same intensities assembled from the matrix elements and the
/// frequency weight.
pub fn helical_spectral_angular_from_elements(p: &HelixParams, n: i64, theta: f64) -> Result<HelicalIntensity> {
    let b = helical_matrix_elements(p, n, theta)?;
    let (st, ct) = theta.sin_cos();
    let w = frequency_weight(p, n, theta);
    let pi = w * (b[0] * ct - b[2] * st).norm_sqr();
    let sigma = w * b[1].norm_sqr();
    Ok(HelicalIntensity { pi, sigma, negative: pi < 0.0 || sigma < 0.0 })
}

fn to_power(p: &HelixParams, n: i64, theta: f64, i: HelicalIntensity) -> AngularPower {
    let k = (n * n) as f64 / (2.0 * std::f64::consts::PI * p.psi0(theta).powi(3));
    AngularPower { pi: k * i.pi, sigma: k * i.sigma }
}

/// `dW_n/dOmega` in units of `e0^2 omega0^2 / c`.
pub fn helical_spectral_angular_power(p: &HelixParams, n: i64, theta: f64) -> Result<AngularPower> {
    Ok(to_power(p, n, theta, helical_spectral_angular(p, n, theta)?))
}

/// `dW_n/dOmega` from the matrix-element route.
pub fn helical_spectral_angular_power_from_elements(p: &HelixParams, n: i64, theta: f64) -> Result<AngularPower> {
    Ok(to_power(p, n, theta, helical_spectral_angular_from_elements(p, n, theta)?))
}

/// Ultrarelativistic total power and its polarization split.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UltraPower {
    /// `W / W_cl`.
    pub ratio: f64,
    pub f_pi: f64,
    pub f_sigma: f64,
}

pub const ULTRA_COEFF_PI: f64 = 5.0 * 1.732_050_807_568_877_2 / 16.0;
pub const ULTRA_COEFF_SIGMA: f64 = 50.0 * 1.732_050_807_568_877_2 / 16.0;

/// `55 sqrt(3) / 16`.
pub fn ultra_coefficient() -> f64 {
    55.0 * 3f64.sqrt() / 16.0
}

/// `compton_over_radius` is `hbar / (m0 c R)`.
pub fn helical_total_power_ultra(p: &HelixParams, compton_over_radius: f64) -> UltraPower {
    let x = compton_over_radius * p.gamma * p.gamma * (1.0 - p.beta_parallel.powi(2));
    let f_pi = 0.125 - ULTRA_COEFF_PI * x;
    let f_sigma = 0.875 - ULTRA_COEFF_SIGMA * x;
    UltraPower { ratio: 1.0 - ultra_coefficient() * x, f_pi, f_sigma }
}

pub fn ultra_warning(p: &HelixParams) -> Option<String> {
    (p.gamma < 10.0).then(|| format!("gamma = {:.3} is not ultrarelativistic", p.gamma))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classical_elements() {
        let p = HelixParams::new(0.8, 0.05, 0.0).unwrap();
        for n in 1..4 {
            for &th in &[0.2, 1.0, 2.2] {
                let z = p.z(n, th);
                let b = bessel_j(n, z).unwrap();
                let e = helical_matrix_elements(&p, n, th).unwrap();
                let nj = (n as f64) / z * b.value;
                assert!((e[0] - Complex64::new(p.beta_perp * nj, 0.0)).norm() < 1e-15);
                assert!((e[1] - Complex64::new(0.0, p.beta_perp * b.d1)).norm() < 1e-15);
                assert!((e[2] - Complex64::new(p.beta_parallel * b.value, 0.0)).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn small_angle_and_no_transverse_motion() {
        let p = HelixParams::new(0.8, 0.05, 1e-6).unwrap();
        let e = helical_matrix_elements(&p, 1, 1e-6).unwrap();
        let g = 1.0 + p.eps(1) / (2.0 * p.psi0(1e-6));
        assert!((e[1].im - 0.5 * p.beta_perp * g).abs() < 1e-10 * p.beta_perp);
        assert!((g - 1.0).abs() < 1e-4);
        let q = HelixParams::new(0.8, 0.0, 1e-6).unwrap();
        for n in 1..3 {
            let e = helical_matrix_elements(&q, n, 0.7).unwrap();
            assert!(e.iter().all(|c| c.norm() == 0.0));
        }
    }

    #[test]
    fn pi_zero_at_cone() {
        let p = HelixParams::new(0.6, 0.05, 1e-4).unwrap();
        let th = 0.6f64.acos();
        assert!(helical_spectral_angular(&p, 2, th).unwrap().pi.abs() < 1e-30);
    }

    #[test]
    fn perpendicular_value() {
        let p = HelixParams::new(0.5, 0.05, 0.0).unwrap();
        let i = helical_spectral_angular(&p, 1, std::f64::consts::FRAC_PI_2).unwrap();
        let j1 = bessel_j(1, 0.05).unwrap().value;
        assert!((i.pi - 0.25 * j1 * j1).abs() < 1e-18);
        assert!(!i.negative);
    }

    #[test]
    fn element_route_matches_closed_form_to_first_order() {
        let p0 = HelixParams::new(0.9, 0.05, 0.0).unwrap();
        let h = 1e-7;
        let p1 = HelixParams { chi: h, ..p0 };
        for n in 1..4 {
            for &th in &[0.3, 1.2, 2.4] {
                let c0 = helical_spectral_angular(&p0, n, th).unwrap();
                let c1 = helical_spectral_angular(&p1, n, th).unwrap();
                let e0 = helical_spectral_angular_from_elements(&p0, n, th).unwrap();
                let e1 = helical_spectral_angular_from_elements(&p1, n, th).unwrap();
                assert!((c0.pi - e0.pi).abs() <= 1e-13 * c0.pi.abs().max(1e-300));
                let dc = (c1.sigma - c0.sigma) / h;
                let de = (e1.sigma - e0.sigma) / h;
                assert!((dc - de).abs() < 1e-4 * dc.abs(), "sigma n={n} th={th}");
                let dc = (c1.pi - c0.pi) / h;
                let de = (e1.pi - e0.pi) / h;
                assert!((dc - de).abs() < 1e-4 * dc.abs(), "pi n={n} th={th}");
            }
        }
    }

    #[test]
    fn ultra_split() {
        let p = HelixParams::new(0.99995, 0.005, 0.0).unwrap();
        let u = helical_total_power_ultra(&p, 0.0);
        assert_eq!((u.ratio, u.f_pi, u.f_sigma), (1.0, 0.125, 0.875));
        let x = 0.01 / (p.gamma * p.gamma * (1.0 - p.beta_parallel.powi(2)));
        let u = helical_total_power_ultra(&p, x);
        assert!((u.ratio - (1.0 - 0.01 * ultra_coefficient())).abs() < 1e-15);
        assert!((u.f_pi + u.f_sigma - u.ratio).abs() < 1e-15);
        assert!(ultra_warning(&p).is_none());
    }

    #[test]
    fn params_validation() {
        assert!(HelixParams::new(0.9, 0.5, 0.0).is_err());
        let p = HelixParams::from_field(0.5, 10.0, 0.0).unwrap();
        assert!((p.beta_perp - 0.05).abs() < 1e-16);
        assert!((p.gamma - 10.0).abs() < 1e-12);
        assert!((p.radius - p.beta_perp / p.beta_parallel).abs() < 1e-16);
    }
}
