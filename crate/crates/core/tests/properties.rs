use proptest::prelude::*;

use undulator_core::fields::{vector_potential, Harmonic};
use undulator_core::helical::helical_spectral_angular;
use undulator_core::kinematics::solve_trajectory;
use undulator_core::specfun::jn;
use undulator_core::spin::gamma_factor;
use undulator_core::{Complex64, FieldModel, HelixParams};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn bessel_reflection(n in 0i64..40, x in 0.0f64..60.0) {
        let a = jn(n, x).unwrap();
        let b = jn(-n, x).unwrap();
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        prop_assert!((b - sign * a).abs() <= 1e-15);
    }

    #[test]
    fn bessel_recurrence(n in 1i64..40, x in 0.5f64..60.0) {
        let lhs = jn(n - 1, x).unwrap() + jn(n + 1, x).unwrap();
        let rhs = 2.0 * n as f64 / x * jn(n, x).unwrap();
        prop_assert!((lhs - rhs).abs() < 1e-12 * (1.0 + rhs.abs()));
    }

    #[test]
    fn potential_is_periodic(c in prop::array::uniform4(-1.0f64..1.0), z in -10.0f64..10.0) {
        let m = FieldModel::fourier(&[
            Harmonic { n: 1, c1: Complex64::new(c[0], c[1]), c2: Complex64::new(c[2], 0.0) },
            Harmonic { n: 3, c1: Complex64::new(0.0, c[3]), c2: Complex64::new(c[1], c[0]) },
        ]).unwrap();
        let a = vector_potential(&m, z);
        let b = vector_potential(&m, z + m.period_l);
        prop_assert!((a[0] - b[0]).abs() < 1e-12 && (a[1] - b[1]).abs() < 1e-12);
    }

    #[test]
    fn helix_speed_is_conserved(k in 0.01f64..0.9, gamma in 1.2f64..20.0) {
        let lambda = (gamma * gamma - 1.0).sqrt();
        let tr = solve_trajectory(&FieldModel::helical(k * lambda), gamma, 64).unwrap();
        for b in &tr.samples {
            prop_assert!(((b[0] * b[0] + b[1] * b[1] + b[2] * b[2]).sqrt() - tr.beta).abs() < 1e-13);
        }
        prop_assert!((tr.samples[0][2] - tr.beta_parallel).abs() < 1e-13);
    }

    #[test]
    fn classical_intensities_are_nonnegative(bpar in 0.1f64..0.95, r in 0.001f64..0.3, n in 1i64..6, th in 0.01f64..3.13) {
        let bperp = r * (1.0 - bpar * bpar).sqrt();
        let p = HelixParams::new(bpar, bperp, 0.0).unwrap();
        let i = helical_spectral_angular(&p, n, th).unwrap();
        prop_assert!(i.pi >= 0.0 && i.sigma >= 0.0 && !i.negative);
    }

    #[test]
    fn gamma_factor_in_unit_interval(b in 0.0f64..=1.0) {
        let g = gamma_factor(b);
        prop_assert!((0.0..=1.0).contains(&g));
    }
}
