//! Generalized Laguerre polynomials by upward three-term recurrence.

use crate::error::{domain, Result};

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha > -1.0 && alpha.is_finite() {
        Ok(())
    } else {
        Err(domain("laguerre", format!("alpha = {alpha} must exceed -1")))
    }
}

/// `L_n^α(u)`.
pub fn laguerre(n: usize, alpha: f64, u: f64) -> Result<f64> {
    check_alpha(alpha)?;
    let mut prev = 0.0;
    let mut cur = 1.0;
    for k in 0..n {
        let kf = k as f64;
        let next = ((2.0 * kf + alpha + 1.0 - u) * cur - (kf + alpha) * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// `[L_0^α(u), ..., L_{n_max}^α(u)]`.
pub fn laguerre_sequence(n_max: usize, alpha: f64, u: f64) -> Result<Vec<f64>> {
    check_alpha(alpha)?;
    let mut out = Vec::with_capacity(n_max + 1);
    out.push(1.0);
    if n_max >= 1 {
        out.push(alpha + 1.0 - u);
    }
    for k in 1..n_max {
        let kf = k as f64;
        let next = ((2.0 * kf + alpha + 1.0 - u) * out[k] - (kf + alpha) * out[k - 1]) / (kf + 1.0);
        out.push(next);
    }
    Ok(out)
}

/// Coefficients `c_k` of `L_n^α(u) = Σ_k c_k u^k`, i.e.
/// `(-1)^k C(n+α, n-k) / k!`.
pub fn laguerre_coefficients(n: usize, alpha: f64) -> Result<Vec<f64>> {
    check_alpha(alpha)?;
    // c_n = (-1)^n / n!, c_{k-1} = -c_k · k (k + α) / (n - k + 1)
    let mut c = vec![0.0; n + 1];
    let mut top = 1.0;
    for k in 1..=n {
        top *= -1.0 / k as f64;
    }
    c[n] = top;
    for k in (1..=n).rev() {
        let kf = k as f64;
        c[k - 1] = -c[k] * kf * (kf + alpha) / ((n - k + 1) as f64);
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn low_orders() {
        assert_eq!(laguerre(0, 1.5, 7.3).unwrap(), 1.0);
        assert_eq!(laguerre(1, 2.0, 1.0).unwrap(), 2.0);
        assert!(laguerre(3, -1.0, 0.2).is_err());
        assert!(laguerre_sequence(3, -2.0, 0.2).is_err());
    }

    #[test]
    fn sequence_matches_single_evaluations() {
        let seq = laguerre_sequence(40, 1.5, 12.0).unwrap();
        for (n, v) in seq.iter().enumerate() {
            assert_relative_eq!(*v, laguerre(n, 1.5, 12.0).unwrap(), max_relative = 1e-14, epsilon = 1e-300);
        }
    }

    #[test]
    fn coefficients_reproduce_values() {
        for n in 0..12 {
            let c = laguerre_coefficients(n, 0.5).unwrap();
            let u: f64 = 1.7;
            let poly: f64 = c.iter().enumerate().map(|(k, ck)| ck * u.powi(k as i32)).sum();
            assert_relative_eq!(poly, laguerre(n, 0.5, u).unwrap(), max_relative = 1e-12, epsilon = 1e-14);
        }
        // L_n^α(0) = C(n+α, n)
        let c = laguerre_coefficients(3, 2.0).unwrap();
        assert_relative_eq!(c[0], 10.0, max_relative = 1e-15);
    }
}
