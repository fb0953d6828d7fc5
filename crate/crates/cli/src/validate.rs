//! Built-in self-checks: oscillatory moments against direct quadrature, the
//! general pipeline against the helical closed forms, Parseval sums and the
//! spin-rate identities.

use undulator_core::fields::{field_harmonics, mean_square_field, Harmonic};
use undulator_core::helical::{helical_spectral_angular_power, helical_spectral_angular_power_from_elements};
use undulator_core::kinematics::solve_trajectory;
use undulator_core::spectra::{harmonic_power, spectral_angular_power, total_power};
use undulator_core::specfun::{oscillatory_moment, Weight};
use undulator_core::spin::{flip_probability, flip_probability_from_integrals, gamma_factor};
use undulator_core::{Complex64, Direction, FieldModel, HelixParams, Result, Spin};

use crate::output::{Cell, Table};

#[derive(Debug, Clone)]
pub struct Check {
    pub name: &'static str,
    pub residual: f64,
    pub tolerance: f64,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.residual.is_finite() && self.residual <= self.tolerance
    }
}

fn trapezoid_moment(n: i64, xi: f64, w: Weight, m: usize) -> Complex64 {
    let h = 2.0 * std::f64::consts::PI / m as f64;
    (0..m)
        .map(|k| {
            let eta = k as f64 * h;
            Complex64::from_polar(w.eval(eta), n as f64 * eta - xi * eta.sin())
        })
        .sum::<Complex64>()
        / m as f64
}

fn moments() -> Result<f64> {
    let mut worst = 0.0f64;
    for w in Weight::ALL {
        for n in 0..=10 {
            for xi in [0.1, 0.5, 1.0, 2.0, 5.0] {
                worst = worst.max((oscillatory_moment(n, xi, w)? - trapezoid_moment(n, xi, w, 512)).norm());
            }
        }
    }
    Ok(worst)
}

fn thetas(count: usize) -> impl Iterator<Item = f64> {
    (0..count).map(move |k| std::f64::consts::PI * (k as f64 + 0.5) / count as f64)
}

fn peak_relative(pairs: &[(f64, f64)]) -> f64 {
    let peak = pairs.iter().fold(0.0f64, |m, p| m.max(p.1.abs()));
    pairs.iter().map(|p| (p.0 - p.1).abs()).fold(0.0, f64::max) / peak
}

fn helical_classical() -> Result<f64> {
    let mut worst = 0.0f64;
    for (bpar, bperp) in [(0.5, 0.05), (0.9, 0.05)] {
        let p = HelixParams::new(bpar, bperp, 0.0)?;
        let traj = solve_trajectory(&FieldModel::helical_from_beta_perp(bperp, p.gamma), p.gamma, 256)?;
        for n in 1..=3 {
            let mut pi = Vec::new();
            let mut sigma = Vec::new();
            for th in thetas(9) {
                let g = spectral_angular_power(&traj, &Direction::new(th, 0.0)?, n, 0.0)?;
                let c = helical_spectral_angular_power(&p, n, th)?;
                pi.push((g.pi, c.pi));
                sigma.push((g.sigma, c.sigma));
            }
            worst = worst.max(peak_relative(&pi)).max(peak_relative(&sigma));
        }
    }
    Ok(worst)
}

fn helical_elements_vs_closed() -> Result<f64> {
    let mut worst = 0.0f64;
    let p = HelixParams::new(0.8, 0.04, 1e-5)?;
    for n in 1..=4 {
        let mut pi = Vec::new();
        let mut sigma = Vec::new();
        for th in thetas(17) {
            let a = helical_spectral_angular_power_from_elements(&p, n, th)?;
            let b = helical_spectral_angular_power(&p, n, th)?;
            pi.push((a.pi, b.pi));
            sigma.push((a.sigma, b.sigma));
        }
        worst = worst.max(peak_relative(&pi)).max(peak_relative(&sigma));
    }
    Ok(worst)
}

fn two_harmonic() -> Result<FieldModel> {
    FieldModel::fourier(&[
        Harmonic { n: 1, c1: Complex64::new(0.06, 0.02), c2: Complex64::new(-0.01, 0.05) },
        Harmonic { n: 3, c1: Complex64::new(0.0, -0.012), c2: Complex64::new(0.008, 0.0) },
    ])
}

fn parseval_field() -> Result<f64> {
    let m = two_harmonic()?;
    let h = field_harmonics(&m, 8)?;
    let sum: f64 = h.iter().map(|r| 2.0 * (r[0].norm_sqr() + r[1].norm_sqr())).sum();
    Ok((sum / mean_square_field(&m) - 1.0).abs())
}

fn parseval_harmonics() -> Result<f64> {
    let m = two_harmonic()?;
    let traj = solve_trajectory(&m, 3.0, 256)?;
    let total = total_power(&traj, &m, 0.0)?.w_classical;
    let sum: f64 = (1..(traj.len() / 2) as i64).map(|n| harmonic_power(&traj, n, 0.0).map(|h| h.total())).sum::<Result<f64>>()?;
    Ok((sum / total - 1.0).abs())
}

fn polarization_split() -> Result<f64> {
    let mut worst = 0.0f64;
    for m in [FieldModel::helical(0.15), two_harmonic()?] {
        let traj = solve_trajectory(&m, 3.0, 128)?;
        let r = total_power(&traj, &m, 0.0)?;
        worst = worst.max((r.i_pi - 0.25).abs()).max((r.i_sigma - 0.75).abs());
    }
    Ok(worst)
}

fn delta_sums() -> Result<f64> {
    let (bpar, bperp) = (0.7f64, 0.06f64);
    let p = HelixParams::new(bpar, bperp, 0.0)?;
    let m = FieldModel::helical_from_beta_perp(bperp, p.gamma);
    let r = total_power(&solve_trajectory(&m, p.gamma, 128)?, &m, 0.0)?;
    let b2 = bperp * bperp;
    Ok(((r.delta0 - b2).abs()).max((r.delta1 - b2).abs()) / b2)
}

fn spin_integrals() -> Result<f64> {
    let mut worst = 0.0f64;
    for b in [0.3, 0.6, 0.9] {
        let p = HelixParams::new(b * 0.99995, b * 0.01, 1e-4)?;
        for zeta in [Spin::Up, Spin::Down] {
            let a = flip_probability_from_integrals(&p, zeta, 1.0);
            let c = flip_probability(&p, zeta, 1.0)?;
            worst = worst.max((a / c - 1.0).abs());
        }
    }
    Ok(worst)
}

fn gamma_bounds() -> Result<f64> {
    let mut r = (gamma_factor(0.0) - 1.0).abs() + gamma_factor(1.0).abs();
    let mut prev = 1.0;
    for k in 1..=200 {
        let g = gamma_factor(k as f64 / 200.0);
        r += (g - prev).max(0.0);
        prev = g;
    }
    Ok(r)
}

type CheckFn = fn() -> Result<f64>;

const CHECKS: [(&str, CheckFn, f64); 9] = [
    ("oscillatory_moments", moments, 1e-10),
    ("helical_classical_pipeline", helical_classical, 1e-6),
    ("helical_elements_vs_closed_form", helical_elements_vs_closed, 1e-4),
    ("parseval_field_harmonics", parseval_field, 1e-10),
    ("parseval_harmonic_power", parseval_harmonics, 1e-10),
    ("classical_polarization_split", polarization_split, 1e-12),
    ("helix_delta_sums", delta_sums, 1e-8),
    ("spin_angular_integrals", spin_integrals, 1e-8),
    ("gamma_factor_bounds", gamma_bounds, 1e-15),
];

pub fn run_checks() -> Vec<Check> {
    CHECKS
        .iter()
        .map(|(name, f, tolerance)| {
            let residual = match f() {
                Ok(r) => r,
                Err(e) => {
                    eprintln!("check {name} failed to evaluate: {e}");
                    f64::INFINITY
                }
            };
            Check { name, residual, tolerance: *tolerance }
        })
        .collect()
}

pub fn table(checks: &[Check]) -> Table {
    let mut t = Table::new(vec!["check", "passed", "max_residual", "tolerance"]);
    for c in checks {
        t.rows.push(vec![Cell::Text(c.name.into()), Cell::Bool(c.passed()), Cell::Float(c.residual), Cell::Float(c.tolerance)]);
    }
    t
}
