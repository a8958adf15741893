use num_complex::Complex64;
use proptest::prelude::*;
use sbx_core::gbessel::{bessel_j, gbessel, gbessel_quad, gbessel_row};

fn j(n: i32, u: f64, v: f64, d: f64) -> Complex64 {
    gbessel(n, u, v, d).unwrap()
}

fn sign(n: i32) -> f64 {
    if n.rem_euclid(2) == 0 { 1.0 } else { -1.0 }
}

fn args() -> impl Strategy<Value = (i32, f64, f64, f64)> {
    (-40i32..=40, -60.0..60.0f64, -20.0..20.0f64, -3.2..3.2f64)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn reduces_to_ordinary((n, u, _v, d) in args()) {
        let r = j(n, u, 0.0, d) - bessel_j(n, u).unwrap();
        prop_assert!(r.norm() < 1e-12);
    }

    #[test]
    fn pure_second_harmonic((n, _u, v, d) in args()) {
        let got = j(n, 0.0, v, d);
        let want = if n % 2 == 0 {
            Complex64::cis(-d * n as f64) * bessel_j(n / 2, v).unwrap()
        } else {
            Complex64::from(0.0)
        };
        prop_assert!((got - want).norm() < 1e-12);
    }

    #[test]
    fn symmetries((n, u, v, d) in args()) {
        let s = sign(n);
        prop_assert!((j(n, -u, v, d) - s * j(n, u, v, d)).norm() < 1e-12);
        prop_assert!((j(n, u, -v, d) - s * j(-n, u, v, -d)).norm() < 1e-12);
        // Third relation in its consistent form: follows from the second with d -> -d.
        prop_assert!((j(n, u, -v, -d) - s * j(-n, u, v, d)).norm() < 1e-12);
    }

    #[test]
    fn derivatives((n, u, v, d) in args()) {
        let h = 1e-5;
        let du = (j(n, u + h, v, d) - j(n, u - h, v, d)) / (2.0 * h);
        let dv = (j(n, u, v + h, d) - j(n, u, v - h, d)) / (2.0 * h);
        let du_lhs = j(n - 1, u, v, d) - j(n + 1, u, v, d);
        let dv_lhs = Complex64::cis(-2.0 * d) * j(n - 2, u, v, d) - Complex64::cis(2.0 * d) * j(n + 2, u, v, d);
        prop_assert!((du_lhs - 2.0 * du).norm() < 1e-7);
        prop_assert!((dv_lhs - 2.0 * dv).norm() < 1e-7);
    }

    #[test]
    fn recurrence((n, u, v, d) in args()) {
        let lhs = 2.0 * n as f64 * j(n, u, v, d);
        let rhs = u * (j(n - 1, u, v, d) + j(n + 1, u, v, d))
            + 2.0 * v * (Complex64::cis(-2.0 * d) * j(n - 2, u, v, d) + Complex64::cis(2.0 * d) * j(n + 2, u, v, d));
        prop_assert!((lhs - rhs).norm() < 1e-10 * (1.0 + n.abs() as f64));
    }

    #[test]
    fn generating_function((_n, u, v, d) in args(), phi in -3.2..3.2f64) {
        let w = (u.abs() + 2.0 * v.abs()) as i32 + 60;
        let row = gbessel_row(-w, w, u, v, d).unwrap();
        let sum: Complex64 = row.iter().map(|(n, x)| Complex64::cis(n as f64 * (phi + d)) * x).sum();
        let want = Complex64::cis(u * (phi + d).sin() + v * (2.0 * phi).sin());
        prop_assert!((sum - want).norm() < 1e-10);
    }

    #[test]
    fn addition_theorem(
        (n, u, v, d) in args(),
        up in -20.0..20.0f64,
        vp in -8.0..8.0f64,
    ) {
        let w = (u.abs() + up.abs() + 2.0 * (v.abs() + vp.abs())) as i32 + n.abs() + 60;
        let a = gbessel_row(-2 * w, 2 * w, u, v, d).unwrap();
        let plus = gbessel_row(-w, w, up, vp, d).unwrap();
        let minus = gbessel_row(-w, w, up, vp, -d).unwrap();
        let s_plus: Complex64 = (-w..=w).map(|k| a.get(n - k) * plus.get(k)).sum();
        let s_minus: Complex64 = (-w..=w).map(|k| a.get(n + k) * minus.get(k)).sum();
        prop_assert!((s_plus - j(n, u + up, v + vp, d)).norm() < 1e-9);
        prop_assert!((s_minus - j(n, u - up, v - vp, d)).norm() < 1e-9);
    }

    #[test]
    fn parseval((_n, u, v, d) in args()) {
        let w = (u.abs() + 2.0 * v.abs()) as i32 + 60;
        let s = gbessel_row(-w, w, u, v, d).unwrap().norm_sqr_sum();
        prop_assert!((s - 1.0).abs() < 1e-10);
    }

    #[test]
    fn bounded_and_real_at_zero_phase((n, u, v, d) in args()) {
        prop_assert!(j(n, u, v, d).norm() <= 1.0 + 1e-12);
        prop_assert!(j(n, u, v, 0.0).im.abs() < 1e-15);
    }

    #[test]
    fn series_matches_quadrature((n, u, v, d) in args()) {
        let s = j(n, u, v, d);
        let q = gbessel_quad(n, u, v, d).unwrap();
        prop_assert!((s - q).norm() <= 1e-10 * q.norm() + 1e-13);
    }

    #[test]
    fn row_matches_pointwise((n, u, v, d) in args()) {
        let row = gbessel_row(n - 5, n + 5, u, v, d).unwrap();
        for m in n - 5..=n + 5 {
            prop_assert!((row.get(m) - j(m, u, v, d)).norm() <= 1e-12);
        }
    }
}

#[test]
fn ordinary_parity_is_exact() {
    for n in -30..=30 {
        for &x in &[0.3, 7.5, 41.0] {
            assert_eq!(bessel_j(-n, x).unwrap(), sign(n) * bessel_j(n, x).unwrap());
            assert_eq!(bessel_j(n, -x).unwrap(), sign(n) * bessel_j(n, x).unwrap());
        }
    }
}
