//! Radiative spin flip and self-polarization.
//!
//! `zeta` is the longitudinal spin projection of the initial state; a flip
//! takes it to `-zeta`. Rates are in units of `omega0`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::helical::HelixParams;
use crate::kinematics::{radiation_frequency, Direction, Spin, Trajectory};
use crate::specfun::bessel::orders;
use crate::specfun::quadrature::{cumulative_periodic, integrate};

/// Self-polarization characteristics of a helical undulator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinResult {
    /// Rate of `zeta = -1 -> +1`.
    pub w_down_up: f64,
    /// Rate of `zeta = +1 -> -1`.
    pub w_up_down: f64,
    pub gamma_factor: f64,
    /// `tau * omega0 = 1 / (w_down_up + w_up_down)`.
    pub tau_omega0: f64,
    /// Equilibrium polarization of the two-state balance, equal to `Gamma`.
    pub p_equilibrium: f64,
    /// `(5/6)(1 - beta^2)`, the `beta -> 1` asymptote of the polarization.
    pub p_asymptotic: f64,
    /// `tau * omega0` from the `beta -> 1` asymptotic formula.
    pub tau_asymptotic: f64,
}

/// `Gamma(beta) = 5(1 - beta^2) / (5 - 2 beta^2 + 3 beta^4)`.
pub fn gamma_factor(beta: f64) -> f64 {
    let b2 = beta * beta;
    5.0 * (1.0 - b2) / (5.0 - 2.0 * b2 + 3.0 * b2 * b2)
}

/// `beta_perp / (beta sqrt(1 - beta^2))`; the rate formulas need it small.
pub fn polarization_regime_parameter(p: &HelixParams) -> f64 {
    let b = p.beta();
    p.beta_perp / (b * (1.0 - b * b).sqrt())
}

pub fn polarization_regime_warning(p: &HelixParams) -> Option<String> {
    let v = polarization_regime_parameter(p);
    (v > 0.1).then(|| format!("beta_perp/(beta sqrt(1-beta^2)) = {v:.3e}; spin-flip rates are approximate"))
}

fn check_regime(p: &HelixParams) -> Result<()> {
    let v = polarization_regime_parameter(p);
    if v > 0.5 {
        return Err(Error::PolarizationRegimeViolation { value: v });
    }
    Ok(())
}

/// Flip matrix element `(hbar omega / 2E^2 beta^2) (1/T) int exp(i psi2) {..} dt`
/// by periodic quadrature over one period of the orbit.
pub fn flip_matrix_element(traj: &Trajectory, dir: &Direction, n: i64, zeta: Spin, chi: f64) -> Result<[Complex64; 3]> {
    traj.require_transverse()?;
    if !(chi > 0.0) {
        return Err(Error::InvalidInput(format!("chi must be > 0 for a spin flip, got {chi}")));
    }
    let z = zeta.zeta();
    let omega = radiation_frequency(traj, dir, n, Some((zeta, zeta.flipped())), 0.0)?;
    let e = dir.e();
    let w0 = traj.omega0();
    let beta = traj.beta;
    let len = traj.len();
    let y = traj.phase_offset(&e);
    let (_, q3) = cumulative_periodic(&traj.r3_integrand(), traj.period_t);

    let i = Complex64::i();
    let mut acc = [Complex64::new(0.0, 0.0); 3];
    for k in 0..len {
        let wrap = (n.rem_euclid(len as i64) as u64 * k as u64 % len as u64) as f64 / len as f64;
        let phase = 2.0 * std::f64::consts::PI * wrap - omega * w0 * y[k] + z * beta * q3[k];
        let ph = Complex64::from_polar(1.0, phase);
        let b = &traj.samples[k];
        let bt = b[0].hypot(b[1]);
        let amp = [
            (i * beta * b[1] - z * b[2] * b[0]) / bt,
            (-i * beta * b[0] - z * b[2] * b[1]) / bt,
            Complex64::new(z * bt, 0.0),
        ];
        for c in 0..3 {
            acc[c] += ph * amp[c];
        }
    }
    let pref = chi * omega / (2.0 * traj.gamma * beta * beta) / len as f64;
    Ok([acc[0] * pref, acc[1] * pref, acc[2] * pref])
}

/// Flip frequency `omega / omega0 = (n - zeta beta / beta_par) / psi0` on the helix.
pub fn flip_frequency_helical(p: &HelixParams, n: i64, theta: f64, zeta: Spin) -> f64 {
    (n as f64 - zeta.zeta() * p.beta() / p.beta_parallel) / p.psi0(theta)
}

/// Closed-form flip amplitudes `(alpha_pi, alpha_sigma)` at azimuth zero.
pub fn flip_amplitudes_helical(p: &HelixParams, n: i64, theta: f64, zeta: Spin) -> Result<(Complex64, Complex64)> {
    if !(theta > 0.0 && theta < std::f64::consts::PI) {
        return Err(Error::InvalidInput(format!("theta must lie in (0, pi), got {theta}")));
    }
    let omega = flip_frequency_helical(p, n, theta, zeta);
    if omega <= 0.0 {
        return Err(Error::NoKinematicSupport { n, omega });
    }
    let (b_pi, b_sigma) = flip_braces(p, n, theta, zeta, omega)?;
    let pref = p.chi * omega / (2.0 * p.gamma * p.beta().powi(2));
    Ok((Complex64::new(-pref * b_pi, 0.0), Complex64::new(0.0, pref * b_sigma)))
}

/// The real brackets of the two amplitudes, without the prefactor.
fn flip_braces(p: &HelixParams, n: i64, theta: f64, zeta: Spin, omega: f64) -> Result<(f64, f64)> {
    let z = zeta.zeta();
    let (st, ct) = theta.sin_cos();
    let x = omega * p.beta_perp * st;
    let j = orders(n - 1, n + 1, x);
    let (jm, j0, jp) = (j[0], j[1], j[2]);
    let d1 = 0.5 * (jm - jp);
    let nz = 0.5 * (jm + jp);
    let beta = p.beta();
    let b_pi = (beta * d1 + z * p.beta_parallel * nz) * ct + z * p.beta_perp * j0 * st;
    let b_sigma = z * p.beta_parallel * d1 + beta * nz;
    Ok((b_pi, b_sigma))
}

/// Closed-form flip rate `w(zeta, -zeta)` in units of `omega0`.
pub fn flip_probability(p: &HelixParams, zeta: Spin, alpha_fs: f64) -> Result<f64> {
    check_regime(p)?;
    let b2 = p.beta().powi(2);
    let poly = 5.0 - 2.0 * b2 + 3.0 * b2 * b2;
    Ok(alpha_fs * p.chi.powi(2) * p.beta_perp.powi(2) / (30.0 * b2 * b2) * poly / (1.0 - b2).powi(3)
        * (1.0 - zeta.zeta() * gamma_factor(b2.sqrt())))
}

/// Angular integrals `(f_pi, f_sigma)` of the near-axis flip intensity,
/// `psi0 = 1 - beta cos(theta)`.
pub fn flip_angular_integrals(beta: f64, zeta: Spin) -> (f64, f64) {
    let z = zeta.zeta();
    let b2 = beta * beta;
    let f = |pi: bool| {
        integrate(
            |t: f64| {
                let (s, c) = t.sin_cos();
                let psi = 1.0 - beta * c;
                let num = if pi { (psi - z).powi(2) } else { b2 };
                num * (1.0 - b2) * s.powi(3) / psi.powi(6)
            },
            0.0,
            std::f64::consts::PI,
            64,
            20,
        )
    };
    (f(true), f(false))
}

/// Flip rate assembled from the angular integrals.
pub fn flip_probability_from_integrals(p: &HelixParams, zeta: Spin, alpha_fs: f64) -> f64 {
    let beta = p.beta();
    let (fp, fs) = flip_angular_integrals(beta, zeta);
    alpha_fs * p.chi.powi(2) * p.beta_perp.powi(2) / (16.0 * beta.powi(4)) * (fp + fs)
}

/// Flip rate by summing `omega |alpha|^2` from the closed-form amplitudes
/// over every harmonic with positive frequency and integrating over angles.
pub fn flip_probability_by_summation(p: &HelixParams, zeta: Spin, alpha_fs: f64) -> Result<f64> {
    let z = zeta.zeta();
    let n_lo = (z * p.beta() / p.beta_parallel).floor() as i64 + 1;
    let mut err = None;
    let integral = integrate(
        |theta: f64| {
            let psi0 = p.psi0(theta);
            let mut sum = 0.0;
            for n in n_lo..n_lo + 200 {
                let omega = flip_frequency_helical(p, n, theta, zeta);
                let term = match flip_braces(p, n, theta, zeta, omega) {
                    Ok((a, b)) => omega.powi(3) * (a * a + b * b),
                    Err(e) => {
                        err.get_or_insert(e);
                        0.0
                    }
                };
                sum += term;
                if n > n_lo + 2 && term <= 1e-17 * sum {
                    break;
                }
            }
            theta.sin() / psi0 * sum
        },
        0.0,
        std::f64::consts::PI,
        64,
        20,
    );
    if let Some(e) = err {
        return Err(e);
    }
    let b2 = p.beta().powi(2);
    Ok(alpha_fs * p.chi.powi(2) * (1.0 - b2) / (4.0 * b2 * b2) * integral)
}

pub fn polarization_characteristics(p: &HelixParams, alpha_fs: f64) -> Result<SpinResult> {
    if !(p.chi > 0.0) || !(p.beta_perp > 0.0) {
        return Err(Error::InvalidInput("spin flip needs chi > 0 and beta_perp > 0".into()));
    }
    let w_down_up = flip_probability(p, Spin::Down, alpha_fs)?;
    let w_up_down = flip_probability(p, Spin::Up, alpha_fs)?;
    let b2 = p.beta().powi(2);
    let g = gamma_factor(b2.sqrt());
    Ok(SpinResult {
        w_down_up,
        w_up_down,
        gamma_factor: g,
        tau_omega0: 1.0 / (w_down_up + w_up_down),
        p_equilibrium: g,
        p_asymptotic: 5.0 / 6.0 * (1.0 - b2),
        tau_asymptotic: 2.5 * (1.0 - b2).powi(3) / (alpha_fs * p.chi.powi(2) * p.beta_perp.powi(2)),
    })
}
