use crate::error::{Error, Result};

pub const MAX_ORDER: i64 = 200;
pub const MAX_ARG: f64 = 1.0e4;

/// Value and first two derivatives of `J_n(x)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BesselEval {
    pub order: i64,
    pub arg: f64,
    pub value: f64,
    pub d1: f64,
    pub d2: f64,
}

fn check(n: i64, x: f64) -> Result<()> {
    if n.abs() > MAX_ORDER || !x.is_finite() || x.abs() > MAX_ARG {
        return Err(Error::OrderOverflow { n, x });
    }
    Ok(())
}

/// `J_0(x) .. J_kmax(x)` for `x >= 0`.
///
/// Tiny arguments use the ascending series (a handful of terms, no
/// cancellation); everything else uses Miller's downward recurrence
/// normalized with `J_0 + 2 sum J_2k = 1`.
fn sequence(kmax: usize, x: f64) -> Vec<f64> {
    debug_assert!(x >= 0.0);
    let mut out = vec![0.0; kmax + 1];
    if x == 0.0 {
        out[0] = 1.0;
        return out;
    }
    if x < 0.5 {
        let h = 0.5 * x;
        let h2 = h * h;
        let mut lead = 1.0; // h^k / k!
        for (k, slot) in out.iter_mut().enumerate() {
            if k > 0 {
                lead *= h / k as f64;
            }
            if lead == 0.0 {
                break;
            }
            let mut term = lead;
            let mut sum = term;
            let mut m = 1.0;
            loop {
                term *= -h2 / (m * (m + k as f64));
                sum += term;
                if term.abs() <= 1e-17 * sum.abs() {
                    break;
                }
                m += 1.0;
            }
            *slot = sum;
        }
        return out;
    }

    let top = (kmax as f64).max(x);
    let mut start = (top + 20.0 + 12.0 * top.cbrt()).ceil() as usize;
    if start % 2 == 1 {
        start += 1;
    }
    let mut next = 0.0; // J_{k+1}
    let mut cur = 1e-300; // J_k, arbitrary seed at k = start
    let mut norm = 0.0;
    for k in (0..start).rev() {
        // J_k from J_{k+1} (cur) and J_{k+2} (next)
        let prev = 2.0 * (k + 1) as f64 / x * cur - next;
        next = cur;
        cur = prev;
        if k <= kmax {
            out[k] = cur;
        }
        if k % 2 == 0 {
            norm += if k == 0 { cur } else { 2.0 * cur };
        }
        if cur.abs() > 1e250 {
            let s = 1e-250;
            cur *= s;
            next *= s;
            norm *= s;
            for v in out.iter_mut().skip(k) {
                *v *= s;
            }
        }
    }
    for v in &mut out {
        *v /= norm;
    }
    out
}

/// Table of `J_k(x)` for orders `lo..=hi`, with reflection for negative
/// orders and arguments.
pub(crate) fn orders(lo: i64, hi: i64, x: f64) -> Vec<f64> {
    let kmax = lo.abs().max(hi.abs()) as usize;
    let seq = sequence(kmax, x.abs());
    (lo..=hi)
        .map(|k| {
            let mut v = seq[k.unsigned_abs() as usize];
            let odd_order = k < 0 && k % 2 != 0;
            let odd_arg = x < 0.0 && k % 2 != 0;
            if odd_order != odd_arg {
                v = -v;
            }
            v
        })
        .collect()
}

/// `J_n(x)` and its first two derivatives.
///
/// Derivatives come from the neighbouring orders of the same recurrence:
/// `J' = (J_{n-1} - J_{n+1})/2` and `J'' = (J_{n-2} - 2J_n + J_{n+2})/4`.
pub fn bessel_j(n: i64, x: f64) -> Result<BesselEval> {
    check(n, x)?;
    let j = orders(n - 2, n + 2, x);
    Ok(BesselEval {
        order: n,
        arg: x,
        value: j[2],
        d1: 0.5 * (j[1] - j[3]),
        d2: 0.25 * (j[0] - 2.0 * j[2] + j[4]),
    })
}

/// Plain `J_n(x)`.
pub fn jn(n: i64, x: f64) -> Result<f64> {
    check(n, x)?;
    Ok(orders(n, n, x)[0])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn series(n: u32, x: f64) -> f64 {
        let h = x / 2.0;
        let mut term = h.powi(n as i32) / (1..=n).map(f64::from).product::<f64>();
        let mut sum = term;
        for m in 1..200 {
            term *= -h * h / (m as f64 * (m as f64 + n as f64));
            sum += term;
        }
        sum
    }

    #[test]
    fn zero_argument() {
        let b = bessel_j(0, 0.0).unwrap();
        assert_eq!(b.value, 1.0);
        assert_eq!(b.d1, 0.0);
        assert_eq!(jn(3, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn against_series() {
        for &x in &[0.1, 0.3, 0.7, 1.0, 1.5, 2.0, 4.0] {
            for n in 0..8u32 {
                let got = jn(n as i64, x).unwrap();
                assert!((got - series(n, x)).abs() < 1e-14, "n={n} x={x}");
            }
        }
        assert!((jn(2, 1.5).unwrap() - 0.23209).abs() < 5e-6);
        assert!((jn(1, 1.0).unwrap() - 0.44005).abs() < 5e-6);
    }

    #[test]
    fn reflection() {
        for n in 1..6 {
            let a = jn(n, 2.3).unwrap();
            let b = jn(-n, 2.3).unwrap();
            let s = if n % 2 == 0 { 1.0 } else { -1.0 };
            assert_eq!(b, s * a);
            assert_eq!(jn(n, -2.3).unwrap(), s * a);
        }
    }

    #[test]
    fn range_errors() {
        assert!(matches!(bessel_j(201, 1.0), Err(Error::OrderOverflow { .. })));
        assert!(matches!(bessel_j(1, 2e4), Err(Error::OrderOverflow { .. })));
        assert!(bessel_j(200, 1e4).is_ok());
    }

    #[test]
    fn ode_and_recurrence() {
        for &x in &[0.2, 1.0, 7.5, 30.0, 180.0, 2500.0] {
            for &n in &[0i64, 1, 3, 10, 50, 150] {
                let b = bessel_j(n, x).unwrap();
                let scale = b.value.abs().max(b.d1.abs()).max(1e-300);
                let ode = x * x * b.d2 + x * b.d1 + (x * x - (n * n) as f64) * b.value;
                assert!(ode.abs() <= 1e-10 * (x * x).max(1.0) * scale.max(1e-12), "ode n={n} x={x}");
                let j = orders(n - 1, n + 1, x);
                let rec = j[0] + j[2] - 2.0 * n as f64 / x * j[1];
                let mag = j[0].abs().max(j[2].abs()).max((2.0 * n as f64 / x * j[1]).abs());
                assert!(rec.abs() <= 1e-12 * mag.max(1e-300), "rec n={n} x={x}");
            }
        }
    }
}
