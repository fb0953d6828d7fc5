use num_complex::Complex64;

use super::bessel::{bessel_j, orders};
use crate::error::Result;

/// Trigonometric weights `w(eta)` for the moments
/// `(1/2pi) int_0^{2pi} exp(i(n eta - xi sin eta)) w(eta) d eta`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Weight {
    One,
    Sin,
    Cos,
    SinSq,
    CosSq,
    Sin2,
    SinCos,
    Sin2Sin,
    Sin2Cos,
}

impl Weight {
    pub const ALL: [Weight; 9] = [
        Weight::One,
        Weight::Sin,
        Weight::Cos,
        Weight::SinSq,
        Weight::CosSq,
        Weight::Sin2,
        Weight::SinCos,
        Weight::Sin2Sin,
        Weight::Sin2Cos,
    ];

    pub fn eval(self, eta: f64) -> f64 {
        let (s, c) = eta.sin_cos();
        match self {
            Weight::One => 1.0,
            Weight::Sin => s,
            Weight::Cos => c,
            Weight::SinSq => s * s,
            Weight::CosSq => c * c,
            Weight::Sin2 => 2.0 * s * c,
            Weight::SinCos => s * c,
            Weight::Sin2Sin => 2.0 * s * c * s,
            Weight::Sin2Cos => 2.0 * s * c * c,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Weight::One => "1",
            Weight::Sin => "sin",
            Weight::Cos => "cos",
            Weight::SinSq => "sin^2",
            Weight::CosSq => "cos^2",
            Weight::Sin2 => "sin2",
            Weight::SinCos => "sin*cos",
            Weight::Sin2Sin => "sin2*sin",
            Weight::Sin2Cos => "sin2*cos",
        }
    }
}

/// Below this argument the closed forms divide small numbers by `xi^3`, so
/// the equivalent order-shift expansion is used instead.
const SMALL_XI: f64 = 0.05;

/// Closed-form oscillatory moment in terms of `J_n`, `J_n'`, `J_n''`.
pub fn oscillatory_moment(n: i64, xi: f64, w: Weight) -> Result<Complex64> {
    if xi.abs() < SMALL_XI {
        return shifted_moment(n, xi, w);
    }
    let b = bessel_j(n, xi)?;
    let (j, d1, d2) = (b.value, b.d1, b.d2);
    let nf = n as f64;
    let i = Complex64::i();
    // (n/xi) J_n without the division
    let nj = n_over_x_j(n, xi)?;
    Ok(match w {
        Weight::One => j.into(),
        Weight::Sin => i * d1,
        Weight::Cos => nj.into(),
        Weight::SinSq => (-d2).into(),
        Weight::CosSq => (nf * nj / xi - d1 / xi).into(),
        Weight::Sin2 => i * (2.0 * nf / xi) * (d1 - j / xi),
        Weight::SinCos => i * (nf / xi) * (d1 - j / xi),
        Weight::Sin2Sin => (-2.0 * nf * (d2 / xi - 2.0 * d1 / (xi * xi) + 2.0 * j / xi.powi(3))).into(),
        Weight::Sin2Cos => {
            2.0 * i
                * (-2.0 * nf * nf / xi.powi(3) * j + (nf * nf + 1.0) / (xi * xi) * d1 - d2 / xi)
        }
    })
}

fn n_over_x_j(n: i64, x: f64) -> Result<f64> {
    let j = orders(n - 1, n + 1, x);
    Ok(0.5 * (j[0] + j[2]))
}

/// The same moments written as combinations of shifted orders,
/// using `M[exp(i k eta)] = J_{n+k}`. Valid at any `xi`, including zero.
pub fn shifted_moment(n: i64, xi: f64, w: Weight) -> Result<Complex64> {
    super::bessel::bessel_j(n, xi)?;
    let j = orders(n - 3, n + 3, xi);
    let at = |k: i64| j[(k + 3) as usize];
    let i = Complex64::i();
    let cos_k = |k: i64| 0.5 * (at(k) + at(-k));
    let sin_k = |k: i64| -0.5 * i * (at(k) - at(-k));
    Ok(match w {
        Weight::One => at(0).into(),
        Weight::Sin => sin_k(1),
        Weight::Cos => cos_k(1).into(),
        Weight::SinSq => (0.5 * at(0) - 0.5 * cos_k(2)).into(),
        Weight::CosSq => (0.5 * at(0) + 0.5 * cos_k(2)).into(),
        Weight::Sin2 => sin_k(2),
        Weight::SinCos => 0.5 * sin_k(2),
        Weight::Sin2Sin => (0.5 * (cos_k(1) - cos_k(3))).into(),
        Weight::Sin2Cos => 0.5 * (sin_k(3) + sin_k(1)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trapezoid(n: i64, xi: f64, w: Weight, m: usize) -> Complex64 {
        let h = 2.0 * std::f64::consts::PI / m as f64;
        let mut acc = Complex64::new(0.0, 0.0);
        for k in 0..m {
            let eta = k as f64 * h;
            acc += Complex64::from_polar(1.0, n as f64 * eta - xi * eta.sin()) * w.eval(eta);
        }
        acc / m as f64
    }

    #[test]
    fn closed_forms_match_quadrature() {
        for w in Weight::ALL {
            for n in 0..=10 {
                for &xi in &[0.1, 0.5, 1.0, 2.0, 5.0] {
                    let got = oscillatory_moment(n, xi, w).unwrap();
                    let want = trapezoid(n, xi, w, 512);
                    assert!((got - want).norm() < 1e-12, "{} n={n} xi={xi}", w.name());
                }
            }
        }
    }

    #[test]
    fn shifted_and_closed_agree() {
        for w in Weight::ALL {
            for n in -3..=6 {
                for &xi in &[0.05, 0.3, 3.0, 9.0] {
                    let a = oscillatory_moment(n, xi, w).unwrap();
                    let b = shifted_moment(n, xi, w).unwrap();
                    assert!((a - b).norm() < 1e-12, "{} n={n} xi={xi}", w.name());
                }
            }
        }
    }

    #[test]
    fn small_argument_limits() {
        assert_eq!(oscillatory_moment(0, 0.0, Weight::One).unwrap(), Complex64::new(1.0, 0.0));
        let s = oscillatory_moment(1, 0.0, Weight::Sin).unwrap();
        assert!((s - Complex64::new(0.0, 0.5)).norm() < 1e-15);
        let c = oscillatory_moment(1, 1e-9, Weight::Cos).unwrap();
        assert!((c.re - 0.5).abs() < 1e-12);
        let sin_case = oscillatory_moment(3, 0.7, Weight::Sin).unwrap();
        assert!((sin_case - trapezoid(3, 0.7, Weight::Sin, 64)).norm() < 1e-12);
    }
}
