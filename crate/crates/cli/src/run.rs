use rayon::prelude::*;

use undulator_core::helical::helical_spectral_angular_power_from_elements;
use undulator_core::kinematics::solve_trajectory;
use undulator_core::spectra::{near_axis_warning, spectral_angular_power, total_power, validity_n_cr};
use undulator_core::spin::{polarization_characteristics, polarization_regime_warning};
use undulator_core::{Direction, Error, ALPHA_FS};

use crate::config::RunConfig;
use crate::output::{Cell, Table};

pub const SPECTRUM_HEADER: [&str; 6] = ["n", "theta", "dW_pi", "dW_sigma", "dW_pi_classical", "dW_sigma_classical"];

pub const POWER_HEADER: [&str; 10] = [
    "w_classical",
    "w_classical_field",
    "w_total",
    "quantum_correction",
    "i_pi",
    "i_sigma",
    "delta0",
    "delta1",
    "validity_n_cr",
    "mu",
];

pub const SPIN_HEADER: [&str; 7] =
    ["w_down_up", "w_up_down", "gamma_factor", "tau_omega0", "p_equilibrium", "p_asymptotic", "tau_asymptotic"];

fn warn(msg: &str) {
    eprintln!("warning: {msg}");
}

pub fn spectrum(cfg: &RunConfig, boson: bool, pool: &rayon::ThreadPool) -> Result<Table, Error> {
    let ns = cfg.harmonics().map_err(|e| Error::InvalidInput(e.0))?;
    let thetas = cfg.thetas().map_err(|e| Error::InvalidInput(e.0))?;
    let grid: Vec<(i64, f64)> = ns.iter().flat_map(|&n| thetas.iter().map(move |&t| (n, t))).collect();

    let values: Vec<[f64; 4]> = if boson {
        let p = cfg.helix().map_err(|e| Error::InvalidInput(e.0))?;
        let p0 = undulator_core::HelixParams { chi: 0.0, ..p };
        pool.install(|| {
            grid.par_iter()
                .map(|&(n, th)| {
                    let q = helical_spectral_angular_power_from_elements(&p, n, th)?;
                    let c = helical_spectral_angular_power_from_elements(&p0, n, th)?;
                    Ok([q.pi, q.sigma, c.pi, c.sigma])
                })
                .collect::<Result<Vec<_>, Error>>()
        })?
    } else {
        let model = cfg.field_model().map_err(|e| Error::InvalidInput(e.0))?;
        let traj = solve_trajectory(&model, cfg.gamma, cfg.n_samples)?;
        if let Some(w) = near_axis_warning(&traj) {
            warn(&w);
        }
        let n_cr = validity_n_cr(&traj, cfg.chi);
        if let Some(n) = ns.iter().find(|&&n| n as f64 >= n_cr) {
            warn(&format!("harmonic {n} is beyond the first-order validity limit n_cr = {n_cr:.4e}"));
        }
        pool.install(|| {
            grid.par_iter()
                .map(|&(n, th)| {
                    let dir = Direction::new(th, cfg.phi)?;
                    let q = spectral_angular_power(&traj, &dir, n, cfg.chi)?;
                    let c = spectral_angular_power(&traj, &dir, n, 0.0)?;
                    Ok([q.pi, q.sigma, c.pi, c.sigma])
                })
                .collect::<Result<Vec<_>, Error>>()
        })?
    };

    let mut table = Table::new(SPECTRUM_HEADER.to_vec());
    for (&(n, th), v) in grid.iter().zip(values) {
        let mut row = vec![Cell::Int(n), Cell::Float(th)];
        row.extend(v.iter().map(|x| Cell::Float(*x)));
        table.rows.push(row);
    }
    Ok(table)
}

pub fn power(cfg: &RunConfig) -> Result<Table, Error> {
    let model = cfg.field_model().map_err(|e| Error::InvalidInput(e.0))?;
    let traj = solve_trajectory(&model, cfg.gamma, cfg.n_samples)?;
    if let Some(w) = near_axis_warning(&traj) {
        warn(&w);
    }
    let r = total_power(&traj, &model, cfg.chi)?;
    let row = [
        r.w_classical,
        r.w_classical_field,
        r.w_total,
        r.quantum_correction,
        r.i_pi,
        r.i_sigma,
        r.delta0,
        r.delta1,
        r.validity_n_cr,
        r.mu,
    ];
    Ok(Table::record(POWER_HEADER.to_vec(), row.iter().map(|v| Cell::Float(*v)).collect()))
}

pub fn spin(cfg: &RunConfig) -> Result<Table, Error> {
    let p = cfg.helix().map_err(|e| Error::InvalidInput(e.0))?;
    if let Some(w) = polarization_regime_warning(&p) {
        warn(&w);
    }
    let r = polarization_characteristics(&p, cfg.alpha_fs.unwrap_or(ALPHA_FS))?;
    let row = [r.w_down_up, r.w_up_down, r.gamma_factor, r.tau_omega0, r.p_equilibrium, r.p_asymptotic, r.tau_asymptotic];
    Ok(Table::record(SPIN_HEADER.to_vec(), row.iter().map(|v| Cell::Float(*v)).collect()))
}
