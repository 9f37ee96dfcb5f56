//! Special-function kernel: log-gamma, Laguerre polynomials, Bessel functions
//! and truncated power series.
//!
//! Everything here is a pure function of its arguments.

mod bessel;
mod gamma;
mod laguerre;
mod series;

use num_complex::Complex64;

pub use bessel::{
    bessel_i, bessel_i_complex, bessel_i_scaled, bessel_j_complex, bessel_k, bessel_k_complex_arg,
    bessel_k_real, bessel_k_real_scaled, bessel_k_scaled, ln_bessel_i, BesselKValue,
};
pub use gamma::{digamma, gamma, log_factorial, log_gamma, log_gamma_complex, trigamma};
pub use laguerre::{laguerre, laguerre_coefficients, laguerre_sequence};
pub use series::{hypergeometric_pfq, sum_by_ratio, SeriesResult, MAX_TERMS, QUIET_TERMS, SERIES_TOLERANCE};

pub(crate) use gamma::log_gamma_unchecked;

/// Order of a Bessel function; complex only inside Wigner kernels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Order(pub Complex64);

impl Order {
    pub fn real(nu: f64) -> Self {
        Self(Complex64::new(nu, 0.0))
    }

    pub fn is_finite(&self) -> bool {
        self.0.re.is_finite() && self.0.im.is_finite()
    }
}

impl From<f64> for Order {
    fn from(nu: f64) -> Self {
        Self::real(nu)
    }
}

impl From<Complex64> for Order {
    fn from(nu: Complex64) -> Self {
        Self(nu)
    }
}

/// Numerically stable `ln Σ exp(v_i)`.
pub fn log_sum_exp(values: &[f64]) -> f64 {
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if !max.is_finite() {
        return max;
    }
    max + values.iter().map(|v| (v - max).exp()).sum::<f64>().ln()
}
