//! General-field radiation: matrix elements by periodic quadrature, the
//! spectral-angular distribution, per-harmonic power and total power with
//! the first quantum correction.
//!
//! Powers are in units of `e0^2 omega0^2 / c`, per steradian where angular.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fields::{field_harmonics, mean_square_field, FieldModel};
use crate::kinematics::{radiation_frequency, Direction, Spin, Trajectory};
use crate::specfun::pv_cot_double_integral;
use crate::specfun::quadrature::{cumulative_periodic, fourier_coefficients};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadiationResult {
    /// Classical power from the velocity integral.
    pub w_classical: f64,
    /// Classical power from the mean-square field (near-axis form).
    pub w_classical_field: f64,
    pub w_total: f64,
    /// `I_pi + I_sigma - 1`.
    pub quantum_correction: f64,
    pub i_pi: f64,
    pub i_sigma: f64,
    /// In units of `omega0^2`.
    pub delta0: f64,
    /// In units of `omega0^3`.
    pub delta1: f64,
    pub validity_n_cr: f64,
    pub mu: f64,
}

/// Per-polarization power of one harmonic.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HarmonicPower {
    pub n: i64,
    pub pi: f64,
    pub sigma: f64,
}

impl HarmonicPower {
    pub fn total(&self) -> f64 {
        self.pi + self.sigma
    }
}

/// Angular power density of one harmonic, both polarizations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AngularPower {
    pub pi: f64,
    pub sigma: f64,
}

fn dot(a: &[Complex64; 3], b: &[f64; 3]) -> Complex64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

/// No-flip matrix element `B(n, zeta)` with the `1/(beta_par T)` time
/// normalization. `spin = None` keeps only the spin-independent terms.
pub fn matrix_element_no_flip(
    traj: &Trajectory,
    dir: &Direction,
    n: i64,
    spin: Option<Spin>,
    chi: f64,
) -> Result<[Complex64; 3]> {
    if n < 1 {
        return Err(Error::InvalidInput(format!("harmonic must be >= 1, got {n}")));
    }
    if spin.is_some() {
        traj.require_transverse()?;
    }
    // fails early when the expansion is out of range
    radiation_frequency(traj, dir, n, spin.map(|s| (s, s)), chi)?;

    let e = dir.e();
    let bp = traj.beta_parallel;
    let psi0 = dir.psi0(bp);
    let w0 = traj.omega0();
    let nf = n as f64;
    let len = traj.len();
    let y = traj.phase_offset(&e);

    let mut phase: Vec<f64> = (0..len)
        .map(|k| {
            let wrap = ((n as u64 * k as u64) % len as u64) as f64 / len as f64;
            2.0 * std::f64::consts::PI * wrap - nf * w0 / psi0 * y[k]
        })
        .collect();
    if chi > 0.0 {
        let (qbar, q) = cumulative_periodic(&traj.q1_integrand(&e), traj.period_t);
        let c = chi * nf * nf * w0 / (2.0 * psi0 * psi0);
        for k in 0..len {
            phase[k] += c * (q[k] + qbar / psi0 * y[k]);
        }
        if let Some(s) = spin {
            let (rbar, r) = cumulative_periodic(&traj.r2_integrand(&e), traj.period_t);
            let c = s.zeta() * chi * nf * traj.beta / (2.0 * psi0);
            for k in 0..len {
                phase[k] += c * (r[k] + rbar / psi0 * y[k]);
            }
        }
    }

    let i = Complex64::i();
    let h_omega = chi * nf / (2.0 * psi0); // hbar omega_cl / 2E
    let h_half = chi / (2.0 * w0); // hbar / 2E
    let beta = traj.beta;
    let mut acc = [Complex64::new(0.0, 0.0); 3];
    for k in 0..len {
        let b = &traj.samples[k];
        let d = &traj.dbeta[k];
        let b3 = b[2];
        let mut amp = [Complex64::new(b[0], 0.0), Complex64::new(b[1], 0.0), Complex64::new(b[2], 0.0)];
        if chi > 0.0 {
            let g = h_omega * (1.0 - e[0] * b[0] - e[1] * b[1]) / (b3 * b3);
            for a in amp.iter_mut() {
                *a *= 1.0 + g;
            }
            amp[2] += i * h_half * d[2] / (b3 * b3);
            if let Some(s) = spin {
                let z = s.zeta();
                let bt2 = b[0] * b[0] + b[1] * b[1];
                let eb = e[0] * b[0] + e[1] * b[1];
                let brace = 1.0 / (beta * beta) - eb / bt2;
                let rot = z * h_half * beta / (b3 * b3 * b3);
                amp[0] += h_omega * (-i * z * beta * b[1] / b3 * brace) + rot * d[1];
                amp[1] += h_omega * (i * z * beta * b[0] / b3 * brace) - rot * d[0];
                amp[2] += h_omega * i * z * beta * (e[0] * b[1] - e[1] * b[0]) / bt2;
            }
        }
        let ph = Complex64::from_polar(1.0, phase[k]);
        for a in 0..3 {
            acc[a] += ph * amp[a];
        }
    }
    let norm = 1.0 / (bp * len as f64);
    Ok([acc[0] * norm, acc[1] * norm, acc[2] * norm])
}

fn angular_for(traj: &Trajectory, dir: &Direction, n: i64, spin: Option<Spin>, chi: f64) -> Result<AngularPower> {
    let b = matrix_element_no_flip(traj, dir, n, spin, chi)?;
    let w = radiation_frequency(traj, dir, n, spin.map(|s| (s, s)), chi)?;
    let psi0 = dir.psi0(traj.beta_parallel);
    let w_cl = n as f64 / psi0;
    let weight = traj.beta_parallel.powi(2) / (2.0 * std::f64::consts::PI) * w.powi(4) / (w_cl * w_cl * psi0);
    Ok(AngularPower {
        pi: weight * dot(&b, &dir.e_pi()).norm_sqr(),
        sigma: weight * dot(&b, &dir.e_sigma()).norm_sqr(),
    })
}

/// Spin-averaged `dW_n/dOmega` for both polarizations.
///
/// On orbits whose transverse speed vanishes somewhere (planar fields) the
/// spin-dependent terms are undefined and only the spin-independent part is
/// used; it carries the whole spin average to first order.
pub fn spectral_angular_power(traj: &Trajectory, dir: &Direction, n: i64, chi: f64) -> Result<AngularPower> {
    if traj.is_degenerate() || chi == 0.0 {
        return angular_for(traj, dir, n, None, chi);
    }
    let up = angular_for(traj, dir, n, Some(Spin::Up), chi)?;
    let down = angular_for(traj, dir, n, Some(Spin::Down), chi)?;
    Ok(AngularPower { pi: 0.5 * (up.pi + down.pi), sigma: 0.5 * (up.sigma + down.sigma) })
}

/// `xi0 = chi / beta_par^2`.
pub fn xi0(traj: &Trajectory, chi: f64) -> f64 {
    chi / traj.beta_parallel.powi(2)
}

/// Harmonic beyond which the first-order expansion fails.
pub fn validity_n_cr(traj: &Trajectory, chi: f64) -> f64 {
    let b2 = traj.beta_parallel.powi(2);
    if chi == 0.0 {
        f64::INFINITY
    } else {
        (1.0 - b2) / xi0(traj, chi)
    }
}

/// Diagnostic for orbits outside the near-axis regime.
pub fn near_axis_warning(traj: &Trajectory) -> Option<String> {
    (traj.mu >= 0.1).then(|| format!("deflection parameter mu = {:.4} is not small; near-axis formulas are approximate", traj.mu))
}

fn s_factors(traj: &Trajectory, n: i64, chi: f64) -> (f64, f64) {
    let b2 = traj.beta_parallel.powi(2);
    let x = xi0(traj, chi) * n as f64;
    let g = 1.0 / ((1.0 - b2) * (1.0 - b2));
    let s_pi = g / 3.0 * (1.0 - 0.2 * x * (5.0 + 19.0 * b2) / (1.0 - b2));
    let s_sigma = g * (1.0 - x * (1.0 + 3.0 * b2) / (1.0 - b2));
    (s_pi, s_sigma)
}

fn check_harmonic(traj: &Trajectory, n: i64, chi: f64) -> Result<()> {
    if n < 1 {
        return Err(Error::InvalidInput(format!("harmonic must be >= 1, got {n}")));
    }
    let n_cr = validity_n_cr(traj, chi);
    if n as f64 >= n_cr {
        return Err(Error::HarmonicBeyondValidity { n, n_cr });
    }
    Ok(())
}

/// Velocity harmonics `c_nk = (1/T) int exp(i omega0 n t) beta_k dt`,
/// transverse components only, returned as `sum_k |c_nk|^2` for `n = 0..len/2`.
pub fn velocity_harmonic_weights(traj: &Trajectory) -> Vec<f64> {
    let len = traj.len();
    let mut out = vec![0.0; len / 2];
    for comp in 0..2 {
        let c = fourier_coefficients(&traj.samples.iter().map(|b| b[comp]).collect::<Vec<_>>());
        for (m, o) in out.iter_mut().enumerate() {
            *o += c[m].norm_sqr();
        }
    }
    out
}

/// Power radiated into harmonic `n`, from the velocity harmonics of the orbit.
pub fn harmonic_power(traj: &Trajectory, n: i64, chi: f64) -> Result<HarmonicPower> {
    check_harmonic(traj, n, chi)?;
    let weights = velocity_harmonic_weights(traj);
    let c2 = weights.get(n as usize).copied().unwrap_or(0.0);
    let (s_pi, s_sigma) = s_factors(traj, n, chi);
    let nn = (n * n) as f64;
    Ok(HarmonicPower { n, pi: nn * s_pi * c2, sigma: nn * s_sigma * c2 })
}

/// Power radiated into harmonic `n`, from the field harmonics; agrees with
/// [`harmonic_power`] to the order of `mu^2`.
pub fn harmonic_power_from_field(traj: &Trajectory, model: &FieldModel, n: i64, chi: f64) -> Result<HarmonicPower> {
    check_harmonic(traj, n, chi)?;
    let h = field_harmonics(model, n as usize)?;
    let row = h[n as usize - 1];
    let h2 = (row[0].norm_sqr() + row[1].norm_sqr()) / (traj.gamma * traj.gamma);
    let (s_pi, s_sigma) = s_factors(traj, n, chi);
    Ok(HarmonicPower { n, pi: s_pi * h2, sigma: s_sigma * h2 })
}

/// Total radiated power with the first quantum correction.
pub fn total_power(traj: &Trajectory, model: &FieldModel, chi: f64) -> Result<RadiationResult> {
    if !(chi >= 0.0) {
        return Err(Error::InvalidInput(format!("chi must be >= 0, got {chi}")));
    }
    let w0 = traj.omega0();
    let b2 = traj.beta_parallel.powi(2);
    let len = traj.len() as f64;
    let d1: Vec<[f64; 2]> = traj.dbeta.iter().map(|d| [d[0], d[1]]).collect();
    let d2: Vec<[f64; 2]> = traj.ddbeta.iter().map(|d| [d[0], d[1]]).collect();
    let delta0 = d1.iter().map(|d| d[0] * d[0] + d[1] * d[1]).sum::<f64>() / len;
    let delta1 = 2.0 * pv_cot_double_integral(&d1, &d2, traj.period_t)?;

    let ratio = if delta0 > 0.0 { delta1 / (w0 * delta0) } else { 0.0 };
    let x = xi0(traj, chi);
    let guard = chi * ratio / ((1.0 - b2) * b2);
    if guard >= 0.5 {
        return Err(Error::ExpansionInvalid { value: guard });
    }
    let i_pi = 0.25 - x * ratio * (5.0 + 19.0 * b2) / (20.0 * (1.0 - b2));
    let i_sigma = 0.75 - x * ratio * (3.0 + 9.0 * b2) / (4.0 * (1.0 - b2));
    let w_classical = 2.0 / 3.0 * delta0 / ((1.0 - b2) * (1.0 - b2)) / (w0 * w0);
    let w_classical_field = 2.0 / 3.0 * b2 * mean_square_field(model) / (1.0 - b2) / (w0 * w0);
    Ok(RadiationResult {
        w_classical,
        w_classical_field,
        w_total: w_classical * (i_pi + i_sigma),
        quantum_correction: (i_pi - 0.25) + (i_sigma - 0.75),
        i_pi,
        i_sigma,
        delta0: delta0 / (w0 * w0),
        delta1: delta1 / w0.powi(3),
        validity_n_cr: validity_n_cr(traj, chi),
        mu: traj.mu,
    })
}
