use undulator_core::helical::helical_spectral_angular_power;
use undulator_core::kinematics::solve_trajectory;
use undulator_core::spectra::spectral_angular_power;
use undulator_core::{Direction, FieldModel, HelixParams, Trajectory};

const CASES: [(f64, f64); 3] = [(0.5, 0.05), (0.9, 0.05), (0.99, 0.005)];

fn thetas() -> Vec<f64> {
    (0..17).map(|k| std::f64::consts::PI * (k as f64 + 0.5) / 17.0).collect()
}

fn setup(bpar: f64, bperp: f64, chi: f64) -> (HelixParams, Trajectory) {
    let p = HelixParams::new(bpar, bperp, chi).unwrap();
    let m = FieldModel::helical_from_beta_perp(bperp, p.gamma);
    (p, solve_trajectory(&m, p.gamma, 256).unwrap())
}

/// Worst error over the theta grid relative to the largest value on it.
fn peak_relative(a: &[f64], b: &[f64]) -> f64 {
    let peak = b.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max) / peak
}

fn both(traj: &Trajectory, p: &HelixParams, n: i64, chi: f64) -> (Vec<f64>, Vec<f64>, Vec<f64>, Vec<f64>) {
    let mut out = (vec![], vec![], vec![], vec![]);
    for th in thetas() {
        let g = spectral_angular_power(traj, &Direction::new(th, 0.0).unwrap(), n, chi).unwrap();
        let c = helical_spectral_angular_power(&HelixParams { chi, ..*p }, n, th).unwrap();
        out.0.push(g.pi);
        out.1.push(g.sigma);
        out.2.push(c.pi);
        out.3.push(c.sigma);
    }
    out
}

#[test]
fn classical_spectrum_matches_closed_form() {
    for (bpar, bperp) in CASES {
        let (p, traj) = setup(bpar, bperp, 0.0);
        for n in 1..=5 {
            let (gp, gs, cp, cs) = both(&traj, &p, n, 0.0);
            let err = peak_relative(&gp, &cp).max(peak_relative(&gs, &cs));
            assert!(err < 1e-6, "({bpar}, {bperp}) n={n}: {err:e}");
        }
    }
}

/// First-order coefficient in `chi`: difference quotients at `h, h/2, h/4, ..`
/// extrapolated to zero step.
fn chi_coefficient(f: impl Fn(f64) -> Vec<f64>, h: f64, levels: usize) -> Vec<f64> {
    let f0 = f(0.0);
    let mut t: Vec<Vec<f64>> = (0..levels)
        .map(|k| {
            let c = h / f64::powi(2.0, k as i32);
            f(c).iter().zip(&f0).map(|(x, y)| (x - y) / c).collect()
        })
        .collect();
    for j in 1..levels {
        let w = f64::powi(2.0, j as i32);
        for k in (j..levels).rev() {
            t[k] = t[k].iter().zip(&t[k - 1]).map(|(a, b)| (w * a - b) / (w - 1.0)).collect();
        }
    }
    t.pop().unwrap()
}

#[test]
fn quantum_coefficient_matches_closed_form() {
    // the step shrinks with the orbit: near the axis the spin terms grow
    // like chi / beta_perp and bend the quotient early
    let steps = [(2e-4, 5), (5e-5, 5), (1e-6, 4)];
    for ((bpar, bperp), (h, levels)) in CASES.into_iter().zip(steps) {
        let (p, traj) = setup(bpar, bperp, 0.0);
        for n in 1..=5 {
            let pick = |chi: f64, k: usize| {
                let v = both(&traj, &p, n, chi);
                [v.0, v.1, v.2, v.3][k].clone()
            };
            let mut err = 0.0f64;
            for (g, c) in [(0, 2), (1, 3)] {
                let a = chi_coefficient(|chi| pick(chi, g), h, levels);
                let b = chi_coefficient(|chi| pick(chi, c), h, levels);
                err = err.max(peak_relative(&a, &b));
            }
            assert!(err < 1e-4, "({bpar}, {bperp}) n={n}: {err:e}");
        }
    }
}

#[test]
fn azimuth_does_not_matter() {
    let (_, traj) = setup(0.7, 0.03, 1e-5);
    let a = spectral_angular_power(&traj, &Direction::new(0.6, 0.0).unwrap(), 2, 1e-5).unwrap();
    let b = spectral_angular_power(&traj, &Direction::new(0.6, 2.1).unwrap(), 2, 1e-5).unwrap();
    assert!((a.pi - b.pi).abs() < 1e-10 * a.pi && (a.sigma - b.sigma).abs() < 1e-10 * a.sigma);
}






