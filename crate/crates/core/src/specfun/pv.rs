use crate::error::{Error, Result};

/// `(1/2T^2) PV int int (f(t), g(tau)) cot(pi (t - tau)/T) dt dtau` for
/// two-component periodic samples on the same uniform grid of even length.
///
/// The grid is split into its even and odd sub-grids, which are offset by
/// half a sub-grid step; `t` runs over one of them and `tau` over the other,
/// so `t = tau` never occurs. Both assignments are averaged.
pub fn pv_cot_double_integral(f: &[[f64; 2]], g: &[[f64; 2]], period: f64) -> Result<f64> {
    let a = pv_cot_offset(f, g, period, 0)?;
    let b = pv_cot_offset(f, g, period, 1)?;
    Ok(0.5 * (a + b))
}

/// One half of the offset scheme: `t` on grid points of the given parity,
/// `tau` on the other parity.
pub fn pv_cot_offset(f: &[[f64; 2]], g: &[[f64; 2]], period: f64, t_parity: usize) -> Result<f64> {
    let n = f.len();
    if n != g.len() || n % 2 != 0 || n == 0 {
        return Err(Error::GridMismatch { left: n, right: g.len() });
    }
    // cot(pi m / n) for odd m; cot is n-periodic in m
    let cot: Vec<f64> = (0..n)
        .map(|m| if m % 2 == 1 { 1.0 / (std::f64::consts::PI * m as f64 / n as f64).tan() } else { 0.0 })
        .collect();
    let mut acc = 0.0;
    for i in (t_parity % 2..n).step_by(2) {
        let mut row = 0.0;
        for j in ((t_parity + 1) % 2..n).step_by(2) {
            let m = (i + n - j) % n;
            row += (f[i][0] * g[j][0] + f[i][1] * g[j][1]) * cot[m];
        }
        acc += row;
    }
    let h = 2.0 * period / n as f64;
    Ok(acc * h * h / (2.0 * period * period))
}
