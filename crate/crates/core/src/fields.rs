//! Periodic transverse magnetic fields and their vector potentials.
//!
//! The field period is `l = 2*pi` (unit wavenumber). The field and potential
//! are related by `H = (-A2', A1', 0)`; amplitudes are in units where the
//! canonical momentum is `P = p + A`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::PERIOD;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldKind {
    Helical,
    Planar,
    FourierSeries,
}

/// One Fourier row: `H_k(z) += 2 Re(c_k exp(i n z))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Harmonic {
    pub n: u32,
    pub c1: Complex64,
    pub c2: Complex64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FieldModel {
    pub kind: FieldKind,
    pub amplitude_h0: f64,
    pub period_l: f64,
    pub harmonics: Vec<Harmonic>,
}

/// Potential and its first two derivatives at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PotentialJet {
    pub a: [f64; 2],
    pub da: [f64; 2],
    pub dda: [f64; 2],
}

impl FieldModel {
    /// `H = (-H0 cos z, -H0 sin z)`.
    pub fn helical(h0: f64) -> Self {
        FieldModel { kind: FieldKind::Helical, amplitude_h0: h0, period_l: PERIOD, harmonics: Vec::new() }
    }

    /// Helical field that produces transverse speed `beta_perp` at Lorentz factor `gamma`.
    pub fn helical_from_beta_perp(beta_perp: f64, gamma: f64) -> Self {
        Self::helical(beta_perp * gamma)
    }

    /// `H = (H0 cos z, 0)`.
    pub fn planar(h0: f64) -> Self {
        FieldModel { kind: FieldKind::Planar, amplitude_h0: h0, period_l: PERIOD, harmonics: Vec::new() }
    }

    pub fn zero() -> Self {
        Self::helical(0.0)
    }

    /// Band-limited field from Fourier rows; rows with the same `n` are summed.
    pub fn fourier(rows: &[Harmonic]) -> Result<Self> {
        let mut merged: Vec<Harmonic> = Vec::new();
        for r in rows {
            if r.n == 0 {
                return Err(Error::InvalidInput("harmonic index must be >= 1 (a uniform field has no periodic potential)".into()));
            }
            if !(r.c1.re.is_finite() && r.c1.im.is_finite() && r.c2.re.is_finite() && r.c2.im.is_finite()) {
                return Err(Error::InvalidInput(format!("non-finite coefficient for n = {}", r.n)));
            }
            match merged.iter_mut().find(|m| m.n == r.n) {
                Some(m) => {
                    m.c1 += r.c1;
                    m.c2 += r.c2;
                }
                None => merged.push(*r),
            }
        }
        merged.sort_by_key(|h| h.n);
        Ok(FieldModel { kind: FieldKind::FourierSeries, amplitude_h0: 0.0, period_l: PERIOD, harmonics: merged })
    }

    /// Highest harmonic present.
    pub fn band_limit(&self) -> u32 {
        match self.kind {
            FieldKind::Helical | FieldKind::Planar => 1,
            FieldKind::FourierSeries => self.harmonics.iter().map(|h| h.n).max().unwrap_or(0),
        }
    }

    pub fn potential_jet(&self, z: f64) -> PotentialJet {
        let h0 = self.amplitude_h0;
        match self.kind {
            FieldKind::Helical => {
                let (s, c) = z.sin_cos();
                PotentialJet { a: [h0 * c, h0 * s], da: [-h0 * s, h0 * c], dda: [-h0 * c, -h0 * s] }
            }
            FieldKind::Planar => {
                let (s, c) = z.sin_cos();
                PotentialJet { a: [0.0, -h0 * s], da: [0.0, -h0 * c], dda: [0.0, h0 * s] }
            }
            FieldKind::FourierSeries => {
                let mut jet = PotentialJet { a: [0.0; 2], da: [0.0; 2], dda: [0.0; 2] };
                for h in &self.harmonics {
                    let nf = h.n as f64;
                    let e = Complex64::from_polar(1.0, nf * z);
                    let i = Complex64::i();
                    // A1 = int H2, A2 = -int H1
                    let g = [h.c2 * e / (i * nf), -h.c1 * e / (i * nf)];
                    for k in 0..2 {
                        jet.a[k] += 2.0 * g[k].re;
                        jet.da[k] += 2.0 * (g[k] * i * nf).re;
                        jet.dda[k] += 2.0 * (g[k] * (-nf * nf)).re;
                    }
                }
                jet
            }
        }
    }
}

pub fn vector_potential(model: &FieldModel, z: f64) -> [f64; 2] {
    model.potential_jet(z).a
}

pub fn magnetic_field(model: &FieldModel, z: f64) -> [f64; 2] {
    let da = model.potential_jet(z).da;
    [-da[1], da[0]]
}

/// `(1/l) int_0^l H_k(z) exp(i n z) dz` for `n = 1..=n_max`.
pub fn field_harmonics(model: &FieldModel, n_max: usize) -> Result<Vec<[Complex64; 2]>> {
    if n_max == 0 {
        return Err(Error::InvalidInput("n_max must be >= 1".into()));
    }
    let need = 4 * (model.band_limit() as usize + n_max);
    let m = need.max(64).next_power_of_two();
    let coarse = harmonics_on_grid(model, n_max, m);
    let fine = harmonics_on_grid(model, n_max, 2 * m);
    let scale = mean_square_field(model).sqrt().max(1e-300);
    let diff = coarse
        .iter()
        .zip(&fine)
        .map(|(a, b)| (a[0] - b[0]).norm().max((a[1] - b[1]).norm()))
        .fold(0.0, f64::max);
    if diff > 1e-12 * scale {
        return Err(Error::HarmonicQuadrature { difference: diff });
    }
    Ok(fine)
}

fn harmonics_on_grid(model: &FieldModel, n_max: usize, m: usize) -> Vec<[Complex64; 2]> {
    let h = model.period_l / m as f64;
    let samples: Vec<[f64; 2]> = (0..m).map(|k| magnetic_field(model, k as f64 * h)).collect();
    (1..=n_max)
        .map(|n| {
            let mut acc = [Complex64::new(0.0, 0.0); 2];
            for (k, s) in samples.iter().enumerate() {
                let e = Complex64::from_polar(1.0, n as f64 * k as f64 * h);
                acc[0] += e * s[0];
                acc[1] += e * s[1];
            }
            [acc[0] / m as f64, acc[1] / m as f64]
        })
        .collect()
}

/// `(1/l) int_0^l |H|^2 dz`.
pub fn mean_square_field(model: &FieldModel) -> f64 {
    let h0 = model.amplitude_h0;
    match model.kind {
        FieldKind::Helical => h0 * h0,
        FieldKind::Planar => 0.5 * h0 * h0,
        FieldKind::FourierSeries => model.harmonics.iter().map(|h| 2.0 * (h.c1.norm_sqr() + h.c2.norm_sqr())).sum(),
    }
}
