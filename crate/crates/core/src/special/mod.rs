//! Real special functions and half-line quadrature.

mod lobachevsky;
mod quadrature;

pub use lobachevsky::lobachevsky;
pub use quadrature::{integrate, integrate_halfline, GaussianEnvelope, QuadratureSpec};

/// Complementary error function.
pub fn erfc(x: f64) -> f64 {
    libm::erfc(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;
    use std::f64::consts::{FRAC_2_SQRT_PI, PI};

    #[test]
    fn erfc_values() {
        assert_eq!(erfc(0.0), 1.0);
        assert!(erfc(10.0) < 1e-40);
        assert!((erfc(1.0) - 0.157_299_207_050_285_13).abs() < 1e-16);
        assert!((erfc(10.0) / 2.088_487_583_762_544_8e-45 - 1.0).abs() < 1e-13);
    }

    #[test]
    fn erfc_matches_defining_integral() {
        let spec = QuadratureSpec::new(1e-300, 1e-14, 2000).unwrap();
        for x in [0.0f64, 0.3, 1.0, 2.5, 5.0, 9.0] {
            // erfc(x) = 2/sqrt(pi) int_0^inf exp(-(x+y)^2) dy
            let env = GaussianEnvelope::new((-x * x).exp(), 1.0).unwrap();
            let v = integrate_halfline(
                |y: f64| Complex64::new((-(x + y) * (x + y)).exp(), 0.0),
                &env,
                &spec,
            )
            .unwrap();
            let want = FRAC_2_SQRT_PI * v.re;
            assert!((erfc(x) / want - 1.0).abs() < 1e-13, "x = {x}");
        }
    }

    #[test]
    fn erfc_monotone_and_bounded() {
        let mut prev = erfc(0.0);
        for i in 1..=1000 {
            let x = i as f64 * 0.01;
            let v = erfc(x);
            assert!(v < prev);
            if x >= 1.0 {
                assert!(v <= (-x * x).exp());
            }
            prev = v;
        }
    }

    // Dense trapezoid oracle for int_0^inf exp(-pi(1-4i)w^2/2) erfc(sqrt(pi/2) w) dw,
    // written as the 2-D integral sqrt(2) int_0^inf int_w^inf exp(-pi(1-4i)w^2/2) exp(-pi z^2/2) dz dw.
    fn trapezoid_oracle(h: f64) -> Complex64 {
        let top = 8.0;
        let n = (top / h).round() as usize;
        let g: Vec<f64> = (0..=n)
            .map(|i| (-PI * (i as f64 * h).powi(2) / 2.0).exp())
            .collect();
        // inner[i] = trapezoid of g over [z_i, top]
        let mut inner = vec![0.0; n + 1];
        for i in (0..n).rev() {
            inner[i] = inner[i + 1] + 0.5 * h * (g[i] + g[i + 1]);
        }
        let f = |i: usize| {
            let w = i as f64 * h;
            Complex64::new(-PI * w * w / 2.0, 2.0 * PI * w * w).exp() * inner[i]
        };
        let mut s = (f(0) + f(n)) * 0.5;
        for i in 1..n {
            s += f(i);
        }
        s * h * 2f64.sqrt()
    }

    #[test]
    fn oscillatory_erfc_integral() {
        let spec = QuadratureSpec::new(1e-13, 1e-13, 4000).unwrap();
        let env = GaussianEnvelope::new(1.0, PI / 2.0).unwrap();
        let f = |w: f64| {
            Complex64::new(-PI * w * w / 2.0, 2.0 * PI * w * w).exp() * erfc((PI / 2.0).sqrt() * w)
        };
        let v = integrate_halfline(f, &env, &spec).unwrap();
        // Richardson on two trapezoid resolutions (10x the quadrature's node density)
        let coarse = trapezoid_oracle(2e-4);
        let fine = trapezoid_oracle(1e-4);
        let oracle = (fine * 4.0 - coarse) / 3.0;
        assert!((v - oracle).norm() < 1e-9, "{v} vs {oracle}");
        let frozen = Complex64::new(0.241_159_275_310_877_43, 0.113_304_035_264_674_55);
        assert!((v - frozen).norm() < 1e-12);
    }

    #[test]
    fn halfline_error_bound_holds_on_examples() {
        let env = GaussianEnvelope::new(1.0, 1.0).unwrap();
        for tol in [1e-4, 1e-6, 1e-9] {
            let spec = QuadratureSpec::new(tol, tol, 2000).unwrap();
            let v = integrate_halfline(|w: f64| Complex64::new((-w * w).exp(), 0.0), &env, &spec)
                .unwrap();
            assert!((v.re - PI.sqrt() / 2.0).abs() <= tol);
        }
    }

    #[test]
    fn more_refinements_do_not_move_the_answer() {
        let env = GaussianEnvelope::new(1.0, PI / 2.0).unwrap();
        let f = |w: f64| {
            Complex64::new(-PI * w * w / 2.0, 2.0 * PI * w * w).exp() * erfc((PI / 2.0).sqrt() * w)
        };
        let a =
            integrate_halfline(f, &env, &QuadratureSpec::new(1e-12, 1e-12, 500).unwrap()).unwrap();
        let b =
            integrate_halfline(f, &env, &QuadratureSpec::new(1e-12, 1e-12, 1000).unwrap()).unwrap();
        assert!((a - b).norm() < 1e-12);
    }
}
