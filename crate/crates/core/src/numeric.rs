//! Complex special functions for the numeric wall-crossing harness.

use num::complex::Complex64;

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Complex gamma function, Lanczos approximation with reflection for the
/// left half plane. Relative accuracy around 1e-13 away from poles.
pub fn gamma(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        // reflection: Gamma(z) Gamma(1-z) = pi / sin(pi z)
        let pi = std::f64::consts::PI;
        let s = (pi * z).sin();
        if s.norm() == 0.0 {
            return Complex64::new(f64::INFINITY, 0.0);
        }
        Complex64::new(pi, 0.0) / (s * gamma(Complex64::new(1.0, 0.0) - z))
    } else {
        let z = z - Complex64::new(1.0, 0.0);
        let mut x = Complex64::new(LANCZOS[0], 0.0);
        for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
            x += Complex64::new(c, 0.0) / (z + Complex64::new(i as f64, 0.0));
        }
        let t = z + Complex64::new(LANCZOS_G + 0.5, 0.0);
        let sqrt_two_pi = (2.0 * std::f64::consts::PI).sqrt();
        Complex64::new(sqrt_two_pi, 0.0)
            * t.powc(z + Complex64::new(0.5, 0.0))
            * (-t).exp()
            * x
    }
}

/// Reciprocal gamma, entire: zero at the poles of gamma.
pub fn rgamma(z: Complex64) -> Complex64 {
    // sin(pi z) Gamma(1 - z) / pi is entire and equals 1/Gamma(z)
    let pi = std::f64::consts::PI;
    if z.re >= 0.5 {
        let g = gamma(z);
        return Complex64::new(1.0, 0.0) / g;
    }
    (pi * z).sin() * gamma(Complex64::new(1.0, 0.0) - z) / Complex64::new(pi, 0.0)
}

/// log Gamma on the right half plane (principal branch along the positive
/// axis), used to keep integrand magnitudes in range before exponentiating.
pub fn ln_gamma_right(z: Complex64) -> Complex64 {
    debug_assert!(z.re > 0.0);
    let zm = z - Complex64::new(1.0, 0.0);
    let mut x = Complex64::new(LANCZOS[0], 0.0);
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        x += Complex64::new(c, 0.0) / (zm + Complex64::new(i as f64, 0.0));
    }
    let t = zm + Complex64::new(LANCZOS_G + 0.5, 0.0);
    0.5 * (2.0 * std::f64::consts::PI).ln()
        + (zm + Complex64::new(0.5, 0.0)) * t.ln()
        - t
        + x.ln()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol * (1.0 + b.norm())
    }

    #[test]
    fn gamma_on_integers_and_halves() {
        assert!(close(
            gamma(Complex64::new(5.0, 0.0)),
            Complex64::new(24.0, 0.0),
            1e-12
        ));
        let sqrt_pi = std::f64::consts::PI.sqrt();
        assert!(close(
            gamma(Complex64::new(0.5, 0.0)),
            Complex64::new(sqrt_pi, 0.0),
            1e-12
        ));
        // Gamma(-1/2) = -2 sqrt(pi)
        assert!(close(
            gamma(Complex64::new(-0.5, 0.0)),
            Complex64::new(-2.0 * sqrt_pi, 0.0),
            1e-12
        ));
    }

    #[test]
    fn gamma_functional_equation_complex() {
        let z = Complex64::new(0.3, 1.7);
        let lhs = gamma(z + Complex64::new(1.0, 0.0));
        let rhs = z * gamma(z);
        assert!(close(lhs, rhs, 1e-12));
    }

    #[test]
    fn rgamma_vanishes_at_poles() {
        for n in 0..4 {
            let v = rgamma(Complex64::new(-(n as f64), 0.0));
            assert!(v.norm() < 1e-12, "1/Gamma(-{n}) = {v}");
        }
        let z = Complex64::new(2.5, -0.7);
        assert!(close(rgamma(z) * gamma(z), Complex64::new(1.0, 0.0), 1e-10));
    }

    #[test]
    fn ln_gamma_consistent() {
        let z = Complex64::new(3.2, 0.4);
        assert!(close(ln_gamma_right(z).exp(), gamma(z), 1e-11));
    }
}
