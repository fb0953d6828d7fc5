use num_complex::Complex64;
use rustfft::FftPlanner;

/// Discrete Fourier coefficients `c_m = (1/N) sum_k f_k exp(-2 pi i m k / N)`,
/// index `m` in FFT order.
pub fn fourier_coefficients(samples: &[f64]) -> Vec<Complex64> {
    let n = samples.len();
    let mut buf: Vec<Complex64> = samples.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    FftPlanner::new().plan_fft_forward(n).process(&mut buf);
    let inv = 1.0 / n as f64;
    for c in &mut buf {
        *c *= inv;
    }
    buf
}

/// Signed frequency index of FFT slot `k`; the Nyquist slot maps to 0 so it
/// is dropped by integration and interpolation.
pub fn signed_index(k: usize, n: usize) -> i64 {
    if 2 * k < n {
        k as i64
    } else if 2 * k == n {
        0
    } else {
        k as i64 - n as i64
    }
}

/// Running integral of periodic samples over a grid of length `period`:
/// returns the mean and the periodic remainder `Q` with `Q(0) = 0`, so that
/// `int_0^{t_k} f = mean * t_k + Q[k]`.
pub fn cumulative_periodic(samples: &[f64], period: f64) -> (f64, Vec<f64>) {
    let n = samples.len();
    let c = fourier_coefficients(samples);
    let mean = c[0].re;
    let w = 2.0 * std::f64::consts::PI / period;
    let mut spec: Vec<Complex64> = (0..n)
        .map(|k| {
            let m = signed_index(k, n);
            if m == 0 {
                Complex64::new(0.0, 0.0)
            } else {
                c[k] / Complex64::new(0.0, w * m as f64)
            }
        })
        .collect();
    FftPlanner::new().plan_fft_inverse(n).process(&mut spec);
    let q0 = spec[0].re;
    let q = spec.iter().map(|v| v.re - q0).collect();
    (mean, q)
}

/// Band-limited interpolant of uniform periodic samples.
#[derive(Debug, Clone)]
pub struct TrigSeries {
    period: f64,
    modes: Vec<(f64, Complex64)>,
    mean: f64,
}

impl TrigSeries {
    pub fn new(samples: &[f64], period: f64) -> Self {
        let n = samples.len();
        let c = fourier_coefficients(samples);
        let w = 2.0 * std::f64::consts::PI / period;
        let modes = (1..n)
            .filter_map(|k| {
                let m = signed_index(k, n);
                (m > 0).then(|| (w * m as f64, 2.0 * c[k]))
            })
            .collect();
        TrigSeries { period, modes, mean: c[0].re }
    }

    pub fn period(&self) -> f64 {
        self.period
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.mean + self.modes.iter().map(|&(w, c)| (c * Complex64::from_polar(1.0, w * x)).re).sum::<f64>()
    }

    pub fn derivative(&self, x: f64) -> f64 {
        self.modes
            .iter()
            .map(|&(w, c)| (c * Complex64::new(0.0, w) * Complex64::from_polar(1.0, w * x)).re)
            .sum()
    }

    /// Antiderivative of the zero-mean part, vanishing at `x = 0`.
    pub fn integral(&self) -> TrigSeries {
        let modes: Vec<(f64, Complex64)> =
            self.modes.iter().map(|&(w, c)| (w, c / Complex64::new(0.0, w))).collect();
        let offset: f64 = modes.iter().map(|&(_, c)| c.re).sum();
        TrigSeries { period: self.period, modes, mean: -offset }
    }
}

/// Gauss-Legendre nodes and weights on [-1, 1].
pub fn gauss_legendre(order: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; order];
    let mut w = vec![0.0; order];
    let n = order as f64;
    for i in 0..(order + 1) / 2 {
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (n + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, z);
            for k in 2..=order {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * z * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            let p = if order == 0 { 1.0 } else { p1 };
            dp = n * (z * p - p0) / (z * z - 1.0);
            let dz = p / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        x[i] = -z;
        x[order - 1 - i] = z;
        w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
        w[order - 1 - i] = w[i];
    }
    (x, w)
}

/// Composite Gauss-Legendre rule on `[a, b]`.
pub fn integrate<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, panels: usize, order: usize) -> f64 {
    let (x, w) = gauss_legendre(order);
    let h = (b - a) / panels as f64;
    let mut total = 0.0;
    for p in 0..panels {
        let lo = a + p as f64 * h;
        let mid = lo + 0.5 * h;
        let mut s = 0.0;
        for (xi, wi) in x.iter().zip(&w) {
            s += wi * f(mid + 0.5 * h * xi);
        }
        total += 0.5 * h * s;
    }
    total
}
