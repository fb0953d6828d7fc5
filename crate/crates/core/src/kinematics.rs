//! Classical periodic orbit in a transverse field, the rho-functionals along
//! it, and the quantum-corrected radiation frequency.

use crate::error::{Error, Result};
use crate::fields::{FieldModel, PotentialJet};
use crate::specfun::quadrature::TrigSeries;

/// Longitudinal spin projection.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Spin {
    /// Along the direction of motion, `zeta = +1`.
    Up,
    /// Against it, `zeta = -1`.
    Down,
}

impl Spin {
    pub fn zeta(self) -> f64 {
        match self {
            Spin::Up => 1.0,
            Spin::Down => -1.0,
        }
    }

    pub fn flipped(self) -> Spin {
        match self {
            Spin::Up => Spin::Down,
            Spin::Down => Spin::Up,
        }
    }
}

/// Photon emission direction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Direction {
    pub theta: f64,
    pub phi: f64,
}

impl Direction {
    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        if !(0.0..=std::f64::consts::PI).contains(&theta) || !phi.is_finite() {
            return Err(Error::InvalidInput(format!("direction out of range: theta={theta}, phi={phi}")));
        }
        Ok(Direction { theta, phi })
    }

    pub fn e(&self) -> [f64; 3] {
        let (st, ct) = self.theta.sin_cos();
        let (sp, cp) = self.phi.sin_cos();
        [st * cp, st * sp, ct]
    }

    pub fn psi0(&self, beta_parallel: f64) -> f64 {
        1.0 - beta_parallel * self.theta.cos()
    }

    pub fn e_pi(&self) -> [f64; 3] {
        let (st, ct) = self.theta.sin_cos();
        let (sp, cp) = self.phi.sin_cos();
        [cp * ct, sp * ct, -st]
    }

    pub fn e_sigma(&self) -> [f64; 3] {
        let (sp, cp) = self.phi.sin_cos();
        [sp, -cp, 0.0]
    }
}

/// One period of the classical motion, sampled uniformly in time.
#[derive(Debug, Clone)]
pub struct Trajectory {
    pub gamma: f64,
    /// Total speed.
    pub beta: f64,
    pub beta_parallel: f64,
    pub period_t: f64,
    pub mu: f64,
    /// Transverse canonical momentum that makes the orbit drift-free.
    pub p_perp: [f64; 2],
    pub t: Vec<f64>,
    pub samples: Vec<[f64; 3]>,
    /// First and second time derivatives of the velocity.
    pub dbeta: Vec<[f64; 3]>,
    pub ddbeta: Vec<[f64; 3]>,
    /// Transverse position relative to `z = 0`.
    pub r_perp: Vec<[f64; 2]>,
    /// `z(t) - beta_parallel t`.
    pub z_osc: Vec<f64>,
}

fn jet_state(jet: &PotentialJet, p_perp: [f64; 2], lambda2: f64) -> ([f64; 2], f64) {
    let pp = [p_perp[0] + jet.a[0], p_perp[1] + jet.a[1]];
    (pp, lambda2 - pp[0] * pp[0] - pp[1] * pp[1])
}

const DRIFT_TOL: f64 = 1e-13;

fn solve_drift(jets: &[PotentialJet], zs: &[f64], lambda2: f64) -> Result<[f64; 2]> {
    let m = jets.len() as f64;
    let mean_a = [
        jets.iter().map(|j| j.a[0]).sum::<f64>() / m,
        jets.iter().map(|j| j.a[1]).sum::<f64>() / m,
    ];
    let mut p = [-mean_a[0], -mean_a[1]];

    let residual = |p: [f64; 2]| -> Option<([f64; 2], [[f64; 2]; 2])> {
        let mut f = [0.0; 2];
        let mut jac = [[0.0; 2]; 2];
        for j in jets {
            let (pp, p2) = jet_state(j, p, lambda2);
            if p2 <= 0.0 {
                return None;
            }
            let pl = p2.sqrt();
            let p3 = pl * p2;
            for a in 0..2 {
                f[a] += pp[a] / pl;
                for b in 0..2 {
                    jac[a][b] += if a == b { 1.0 / pl } else { 0.0 } + pp[a] * pp[b] / p3;
                }
            }
        }
        for a in 0..2 {
            f[a] /= m;
            for b in 0..2 {
                jac[a][b] /= m;
            }
        }
        Some((f, jac))
    };

    let Some((mut f, mut jac)) = residual(p) else {
        let (k, p2) = jets
            .iter()
            .enumerate()
            .map(|(k, j)| (k, jet_state(j, p, lambda2).1))
            .fold((0, f64::INFINITY), |acc, x| if x.1 < acc.1 { x } else { acc });
        return Err(Error::UndulatorRegimeViolation { z: zs[k], p2_min: p2 });
    };
    let mut iterations = 0;
    let norm = |f: [f64; 2]| f[0].hypot(f[1]);
    while norm(f) > DRIFT_TOL {
        iterations += 1;
        if iterations > 60 {
            return Err(Error::NonConvergence { iterations, residual: norm(f) });
        }
        let det = jac[0][0] * jac[1][1] - jac[0][1] * jac[1][0];
        let step = [
            (jac[1][1] * f[0] - jac[0][1] * f[1]) / det,
            (jac[0][0] * f[1] - jac[1][0] * f[0]) / det,
        ];
        let mut damp = 1.0;
        loop {
            let trial = [p[0] - damp * step[0], p[1] - damp * step[1]];
            if let Some((ft, jt)) = residual(trial) {
                if norm(ft) < norm(f) || damp < 1e-6 {
                    p = trial;
                    f = ft;
                    jac = jt;
                    break;
                }
            }
            damp *= 0.5;
            if damp < 1e-12 {
                return Err(Error::NonConvergence { iterations, residual: norm(f) });
            }
        }
    }
    Ok(p)
}

/// Drift-free periodic trajectory of an electron with Lorentz factor `gamma`.
pub fn solve_trajectory(model: &FieldModel, gamma: f64, n_samples: usize) -> Result<Trajectory> {
    if !(gamma > 1.0) || !gamma.is_finite() {
        return Err(Error::InvalidInput(format!("gamma must exceed 1, got {gamma}")));
    }
    if n_samples < 64 || !n_samples.is_power_of_two() {
        return Err(Error::InvalidInput(format!("n_samples must be a power of two >= 64, got {n_samples}")));
    }
    let e = gamma;
    let lambda2 = (gamma - 1.0) * (gamma + 1.0);
    let l = model.period_l;

    let nz = (2 * n_samples).max((32 * model.band_limit() as usize).next_power_of_two());
    let hz = l / nz as f64;
    let zs: Vec<f64> = (0..nz).map(|k| k as f64 * hz).collect();
    let jets: Vec<PotentialJet> = zs.iter().map(|&z| model.potential_jet(z)).collect();

    let p_perp = solve_drift(&jets, &zs, lambda2)?;

    let mut inv_p = Vec::with_capacity(nz);
    let mut slope = [Vec::with_capacity(nz), Vec::with_capacity(nz)];
    for (j, &z) in jets.iter().zip(&zs) {
        let (pp, p2) = jet_state(j, p_perp, lambda2);
        if p2 <= 0.0 {
            return Err(Error::UndulatorRegimeViolation { z, p2_min: p2 });
        }
        let pl = p2.sqrt();
        inv_p.push(e / pl);
        slope[0].push(pp[0] / pl);
        slope[1].push(pp[1] / pl);
    }
    // t(z) = mean(E/p) z + periodic part
    let dtdz = TrigSeries::new(&inv_p, l);
    let t_of_z = dtdz.integral();
    let rate = dtdz.mean();
    let period_t = rate * l;
    let beta_parallel = l / period_t;
    let x_series: Vec<(f64, TrigSeries)> = slope
        .iter()
        .map(|s| {
            let ts = TrigSeries::new(s, l);
            (ts.mean(), ts.integral())
        })
        .collect();

    let mut t = Vec::with_capacity(n_samples);
    let mut samples = Vec::with_capacity(n_samples);
    let mut dbeta = Vec::with_capacity(n_samples);
    let mut ddbeta = Vec::with_capacity(n_samples);
    let mut r_perp = Vec::with_capacity(n_samples);
    let mut z_osc = Vec::with_capacity(n_samples);
    for k in 0..n_samples {
        let tk = k as f64 * period_t / n_samples as f64;
        let mut z = tk / rate;
        for _ in 0..50 {
            if k == 0 {
                break;
            }
            let g = rate * z + t_of_z.eval(z) - tk;
            let dz = g / dtdz.eval(z);
            z -= dz;
            if dz.abs() <= 1e-15 * (1.0 + z.abs()) {
                break;
            }
        }
        let jet = model.potential_jet(z);
        let (pp, p2) = jet_state(&jet, p_perp, lambda2);
        if p2 <= 0.0 {
            return Err(Error::UndulatorRegimeViolation { z, p2_min: p2 });
        }
        let pl = p2.sqrt();
        let b = [pp[0] / e, pp[1] / e, pl / e];
        let d = &jet.da;
        let dd = &jet.dda;
        let pd = pp[0] * d[0] + pp[1] * d[1];
        let b3d = -pd / (e * e);
        let db = [d[0] * b[2] / e, d[1] * b[2] / e, b3d];
        let ddb = [
            (dd[0] * b[2] * b[2] + d[0] * b3d) / e,
            (dd[1] * b[2] * b[2] + d[1] * b3d) / e,
            -b[2] * (d[0] * d[0] + d[1] * d[1] + pp[0] * dd[0] + pp[1] * dd[1]) / (e * e),
        ];
        t.push(tk);
        samples.push(b);
        dbeta.push(db);
        ddbeta.push(ddb);
        r_perp.push([
            x_series[0].0 * z + x_series[0].1.eval(z),
            x_series[1].0 * z + x_series[1].1.eval(z),
        ]);
        z_osc.push(z - beta_parallel * tk);
    }
    let mu = samples
        .iter()
        .map(|b| (b[0] / b[2]).abs().max((b[1] / b[2]).abs()))
        .fold(0.0, f64::max);
    Ok(Trajectory {
        gamma,
        beta: lambda2.sqrt() / gamma,
        beta_parallel,
        period_t,
        mu,
        p_perp,
        t,
        samples,
        dbeta,
        ddbeta,
        r_perp,
        z_osc,
    })
}

/// Maximum deflection angle `max(|b1/b3|, |b2/b3|)` over the samples.
pub fn deflection_parameter(traj: &Trajectory) -> f64 {
    traj.mu
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn omega0(&self) -> f64 {
        2.0 * std::f64::consts::PI / self.period_t
    }

    pub fn dt(&self) -> f64 {
        self.period_t / self.len() as f64
    }

    /// Displacement over one period minus `(0, 0, l)`, by the trapezoid rule
    /// on the velocity samples.
    pub fn drift_closure(&self) -> [f64; 3] {
        let dt = self.dt();
        let mut s = [0.0; 3];
        for b in &self.samples {
            for k in 0..3 {
                s[k] += b[k] * dt;
            }
        }
        s[2] -= self.beta_parallel * self.period_t;
        s
    }

    /// True when the transverse speed vanishes somewhere on the orbit.
    pub fn is_degenerate(&self) -> bool {
        let (lo, hi) = self
            .samples
            .iter()
            .map(|b| b[0] * b[0] + b[1] * b[1])
            .fold((f64::INFINITY, 0.0f64), |(lo, hi), v| (lo.min(v), hi.max(v)));
        hi == 0.0 || lo <= 1e-8 * hi
    }

    pub(crate) fn require_transverse(&self) -> Result<()> {
        if self.is_degenerate() {
            Err(Error::DegenerateTransverseMotion)
        } else {
            Ok(())
        }
    }

    /// `Y(t) = e_perp . (r_perp(t) - r_perp(0)) + e3 (z_osc(t) - z_osc(0))`,
    /// the periodic part of `psi0 t - F0(t)`.
    pub(crate) fn phase_offset(&self, e: &[f64; 3]) -> Vec<f64> {
        let r0 = self.r_perp[0];
        let z0 = self.z_osc[0];
        self.r_perp
            .iter()
            .zip(&self.z_osc)
            .map(|(r, z)| e[0] * (r[0] - r0[0]) + e[1] * (r[1] - r0[1]) + e[2] * (z - z0))
            .collect()
    }

    /// `[(1 - e_perp.beta_perp)^2 - beta3^2 e3^2] / beta3^2`.
    pub(crate) fn q1_integrand(&self, e: &[f64; 3]) -> Vec<f64> {
        self.samples
            .iter()
            .map(|b| {
                let a = 1.0 - e[0] * b[0] - e[1] * b[1];
                (a * a - b[2] * b[2] * e[2] * e[2]) / (b[2] * b[2])
            })
            .collect()
    }

    /// Integrand of the spin-dependent frequency shift, per unit time and
    /// divided by `beta/E`.
    pub(crate) fn r2_integrand(&self, e: &[f64; 3]) -> Vec<f64> {
        let beta2 = self.beta * self.beta;
        self.samples
            .iter()
            .zip(&self.dbeta)
            .map(|(b, d)| {
                let bt2 = b[0] * b[0] + b[1] * b[1];
                let b32 = b[2] * b[2];
                let w = (d[1] * b[0] - d[0] * b[1]) / (b[2] * bt2);
                let ed = (e[0] * d[1] - e[1] * d[0]) / (b[2] * bt2);
                let eb = e[0] * b[0] + e[1] * b[1];
                ed - w * (bt2 / (beta2 * b32) - eb * (bt2 - 2.0 * b32) / (bt2 * b32))
            })
            .collect()
    }

    /// `(b2' b1 - b1' b2) / (b3 (b1^2 + b2^2))`.
    pub(crate) fn r3_integrand(&self) -> Vec<f64> {
        self.samples
            .iter()
            .zip(&self.dbeta)
            .map(|(b, d)| (d[1] * b[0] - d[0] * b[1]) / (b[2] * (b[0] * b[0] + b[1] * b[1])))
            .collect()
    }
}

/// Period averages of the rho-functionals, evaluated at `x = l`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rho {
    pub rho0: f64,
    pub rho1: f64,
    pub rho2: f64,
    pub rho3: f64,
}

fn mean(v: &[f64]) -> f64 {
    v.iter().sum::<f64>() / v.len() as f64
}

pub(crate) fn rho01(traj: &Trajectory, dir: &Direction) -> (f64, f64) {
    let e = dir.e();
    let l = traj.beta_parallel * traj.period_t;
    let tperp = traj
        .samples
        .iter()
        .map(|b| 1.0 - e[0] * b[0] - e[1] * b[1])
        .sum::<f64>()
        / traj.len() as f64;
    let rho0 = traj.period_t * tperp / l;
    let rho1 = traj.period_t * mean(&traj.q1_integrand(&e)) / (l * traj.gamma);
    (rho0, rho1)
}

pub(crate) fn rho3(traj: &Trajectory) -> Result<f64> {
    traj.require_transverse()?;
    let l = traj.beta_parallel * traj.period_t;
    Ok(traj.beta * traj.period_t * mean(&traj.r3_integrand()) / l)
}

pub(crate) fn rho2(traj: &Trajectory, dir: &Direction) -> Result<f64> {
    traj.require_transverse()?;
    let l = traj.beta_parallel * traj.period_t;
    Ok(traj.beta * traj.period_t * mean(&traj.r2_integrand(&dir.e())) / (l * traj.gamma))
}

pub fn rho_functions(traj: &Trajectory, dir: &Direction) -> Result<Rho> {
    let (rho0, rho1) = rho01(traj, dir);
    Ok(Rho { rho0, rho1, rho2: rho2(traj, dir)?, rho3: rho3(traj)? })
}

/// Radiation frequency in units of `omega0` for the transition
/// `zeta -> zeta'` (`None` for the spin-independent part).
pub fn radiation_frequency(
    traj: &Trajectory,
    dir: &Direction,
    n: i64,
    spins: Option<(Spin, Spin)>,
    chi: f64,
) -> Result<f64> {
    if !(chi >= 0.0) {
        return Err(Error::InvalidInput(format!("chi must be >= 0, got {chi}")));
    }
    let bp = traj.beta_parallel;
    let psi0 = dir.psi0(bp);
    let (shift, zeta_f) = match spins {
        Some((a, b)) => (0.5 * (a.zeta() - b.zeta()), b.zeta()),
        None => (0.0, 0.0),
    };
    let r3 = if shift != 0.0 { rho3(traj)? } else { 0.0 };
    let omega_cl = bp / psi0 * (n as f64 - shift * r3);
    if omega_cl <= 0.0 {
        return Err(Error::NoKinematicSupport { n, omega: omega_cl / traj.omega0() });
    }
    if chi == 0.0 {
        return Ok(omega_cl / traj.omega0());
    }
    let (_, r1) = rho01(traj, dir);
    let r2 = if zeta_f != 0.0 { rho2(traj, dir)? } else { 0.0 };
    let hbar = chi * traj.gamma / traj.omega0();
    let corr = 0.5 * hbar * bp / psi0 * (omega_cl * r1 + zeta_f * r2);
    if corr.abs() > 0.5 {
        return Err(Error::QuantumParameterTooLarge { relative: corr });
    }
    Ok(omega_cl * (1.0 - corr) / traj.omega0())
}
