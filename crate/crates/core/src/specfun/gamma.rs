//! Log-gamma and digamma for real and complex arguments.

use num_complex::Complex64;

use crate::error::{domain, Result};

// B_{2k} / (2k (2k - 1)) for k = 1..=8.
const STIRLING: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
];

const SHIFT: f64 = 15.0;
const HALF_LN_TWO_PI: f64 = 0.918_938_533_204_672_7;

fn stirling_real(x: f64) -> f64 {
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    let mut corr = 0.0;
    let mut pow = inv;
    for c in STIRLING {
        corr += c * pow;
        pow *= inv2;
    }
    (x - 0.5) * x.ln() - x + HALF_LN_TWO_PI + corr
}

/// `ln Γ(x)` for `x > 0`.
pub fn log_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(domain("log_gamma", format!("argument {x} is not a positive finite number")));
    }
    Ok(log_gamma_unchecked(x))
}

pub(crate) fn log_gamma_unchecked(x: f64) -> f64 {
    if x == 1.0 || x == 2.0 {
        return 0.0;
    }
    if x >= SHIFT {
        return stirling_real(x);
    }
    let mut prod = 1.0;
    let mut y = x;
    while y < SHIFT {
        prod *= y;
        y += 1.0;
    }
    stirling_real(y) - prod.ln()
}

/// `Γ(x)` for `x > 0`, through the log.
pub fn gamma(x: f64) -> Result<f64> {
    log_gamma(x).map(f64::exp)
}

/// Principal branch of `ln Γ(z)` for `Re z > 0`.
pub fn log_gamma_complex(z: Complex64) -> Complex64 {
    debug_assert!(z.re > 0.0, "log_gamma_complex needs Re z > 0, got {z}");
    if z.im == 0.0 {
        return Complex64::new(log_gamma_unchecked(z.re), 0.0);
    }
    let mut shift = Complex64::new(0.0, 0.0);
    let mut w = z;
    while w.re < SHIFT && w.norm() < 2.0 * SHIFT {
        shift += w.ln();
        w += 1.0;
    }
    let inv = w.inv();
    let inv2 = inv * inv;
    let mut corr = Complex64::new(0.0, 0.0);
    let mut pow = inv;
    for c in STIRLING {
        corr += pow * c;
        pow *= inv2;
    }
    (w - 0.5) * w.ln() - w + HALF_LN_TWO_PI + corr - shift
}

/// Digamma `ψ(x)` for `x > 0`.
pub fn digamma(x: f64) -> f64 {
    debug_assert!(x > 0.0);
    let mut acc = 0.0;
    let mut y = x;
    while y < 12.0 {
        acc -= 1.0 / y;
        y += 1.0;
    }
    let inv2 = 1.0 / (y * y);
    // ψ(y) ~ ln y - 1/(2y) - Σ B_{2k} / (2k y^{2k})
    let tail = inv2
        * (1.0 / 12.0
            - inv2 * (1.0 / 120.0 - inv2 * (1.0 / 252.0 - inv2 * (1.0 / 240.0 - inv2 * (1.0 / 132.0)))));
    acc + y.ln() - 0.5 / y - tail
}

/// Trigamma `ψ'(x)` for `x > 0`.
pub fn trigamma(x: f64) -> f64 {
    debug_assert!(x > 0.0);
    let mut acc = 0.0;
    let mut y = x;
    while y < 12.0 {
        acc += 1.0 / (y * y);
        y += 1.0;
    }
    let inv = 1.0 / y;
    let inv2 = inv * inv;
    // ψ'(y) ~ 1/y + 1/(2y²) + Σ B_{2k} / y^{2k+1}
    let tail = inv
        * inv2
        * (1.0 / 6.0 - inv2 * (1.0 / 30.0 - inv2 * (1.0 / 42.0 - inv2 * (1.0 / 30.0))));
    acc + inv + 0.5 * inv2 + tail
}

/// `ln(n!)`.
pub fn log_factorial(n: usize) -> f64 {
    log_gamma_unchecked(n as f64 + 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn trivial_values() {
        assert_eq!(log_gamma(1.0).unwrap(), 0.0);
        assert_eq!(log_gamma(2.0).unwrap(), 0.0);
        assert_relative_eq!(
            log_gamma(0.5).unwrap(),
            std::f64::consts::PI.sqrt().ln(),
            max_relative = 1e-14
        );
    }

    #[test]
    fn factorials_match_products() {
        let mut ln_fact = 0.0_f64;
        for n in 1..=170usize {
            ln_fact += (n as f64).ln();
            assert_relative_eq!(log_factorial(n), ln_fact, max_relative = 1e-14);
        }
    }

    #[test]
    fn recursion_down_to_half_integer_base() {
        // Γ(7.25) = 6.25 · 5.25 · 4.25 · 3.25 · 2.25 · 1.25 · Γ(1.25)
        // Γ(1.25) = 0.906402477055477..., tabulated to 18 digits.
        let base: f64 = 0.906_402_477_055_477_0;
        let expected = [6.25_f64, 5.25, 4.25, 3.25, 2.25, 1.25]
            .iter()
            .map(|v| v.ln())
            .sum::<f64>()
            + base.ln();
        assert_relative_eq!(log_gamma(7.25).unwrap(), expected, max_relative = 1e-13);
    }

    #[test]
    fn rejects_non_positive() {
        assert!(log_gamma(0.0).is_err());
        assert!(log_gamma(-1.5).is_err());
        assert!(log_gamma(f64::NAN).is_err());
    }

    #[test]
    fn complex_matches_real_axis_and_reflection_modulus() {
        for &x in &[0.3, 1.7, 4.5, 22.0] {
            let c = log_gamma_complex(Complex64::new(x, 1e-300));
            assert_relative_eq!(c.re, log_gamma(x).unwrap(), max_relative = 1e-13, epsilon = 1e-15);
        }
        // |Γ(1/2 + iy)|² = π / cosh(πy)
        for &y in &[0.5, 3.0, 17.0] {
            let v = log_gamma_complex(Complex64::new(0.5, y));
            let expected = 0.5 * (std::f64::consts::PI / (std::f64::consts::PI * y).cosh()).ln();
            assert_relative_eq!(v.re, expected, max_relative = 1e-13);
        }
        // Γ(1 + iy) Γ(1 - iy) = πy / sinh(πy), and the recurrence Γ(z+1) = zΓ(z).
        let z = Complex64::new(2.3, -4.1);
        let lhs = log_gamma_complex(z + 1.0);
        let rhs = log_gamma_complex(z) + z.ln();
        assert!((lhs - rhs).norm() < 1e-13);
    }

    #[test]
    fn digamma_and_trigamma_against_known_values() {
        let euler = 0.577_215_664_901_532_9;
        assert_relative_eq!(digamma(1.0), -euler, max_relative = 1e-14);
        assert_relative_eq!(digamma(0.5), -euler - 2.0 * 2f64.ln(), max_relative = 1e-14);
        let pi2_6 = std::f64::consts::PI.powi(2) / 6.0;
        assert_relative_eq!(trigamma(1.0), pi2_6, max_relative = 1e-13);
        assert_relative_eq!(trigamma(0.5), 3.0 * pi2_6, max_relative = 1e-13);
    }
}
