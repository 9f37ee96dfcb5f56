//! Truncated evaluation of convergent power series.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Relative size below which a term counts as negligible.
pub const SERIES_TOLERANCE: f64 = 1e-15;
/// Number of consecutive negligible terms required before stopping.
pub const QUIET_TERMS: usize = 3;
/// Hard cap on the number of terms of any series.
pub const MAX_TERMS: usize = 10_000;

/// Outcome of a truncated series evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesResult {
    pub value: Complex64,
    pub terms_used: usize,
    /// Magnitude of the last term added.
    pub tail_bound: f64,
    /// Set when the hard cap stopped the summation.
    pub capped: bool,
}

impl SeriesResult {
    /// Converts a capped result into an error.
    pub fn checked(self, function: &'static str) -> Result<Self> {
        if self.capped {
            Err(Error::SeriesCap {
                function,
                terms: self.terms_used,
                tail: self.tail_bound,
            })
        } else {
            Ok(self)
        }
    }
}

/// Sums `first, first·r(0), first·r(0)·r(1), ...` where `ratio(k)` is the
/// quotient of term `k+1` over term `k`.
pub fn sum_by_ratio<R>(first: Complex64, mut ratio: R) -> SeriesResult
where
    R: FnMut(usize) -> Complex64,
{
    let mut sum = first;
    let mut term = first;
    let mut quiet = 0;
    let mut k = 0;
    if first == Complex64::new(0.0, 0.0) {
        return SeriesResult {
            value: sum,
            terms_used: 1,
            tail_bound: 0.0,
            capped: false,
        };
    }
    loop {
        if k + 1 >= MAX_TERMS {
            return SeriesResult {
                value: sum,
                terms_used: k + 1,
                tail_bound: term.norm(),
                capped: true,
            };
        }
        term *= ratio(k);
        k += 1;
        sum += term;
        if term.norm() <= SERIES_TOLERANCE * sum.norm() {
            quiet += 1;
            if quiet >= QUIET_TERMS {
                break;
            }
        } else {
            quiet = 0;
        }
    }
    SeriesResult {
        value: sum,
        terms_used: k + 1,
        tail_bound: term.norm(),
        capped: false,
    }
}

/// Generalized hypergeometric function `pFq(a; b; w)` from its defining series.
///
/// Only the entire case `p ≤ q` is supported; every `b` must avoid the
/// non-positive integers.
pub fn hypergeometric_pfq(a: &[f64], b: &[f64], w: Complex64) -> Result<SeriesResult> {
    if a.len() > b.len() {
        return Err(crate::error::domain(
            "hypergeometric_pfq",
            "only p <= q (entire) series are supported",
        ));
    }
    if let Some(bad) = b.iter().find(|&&bj| bj <= 0.0 && bj.fract() == 0.0) {
        return Err(crate::error::domain(
            "hypergeometric_pfq",
            format!("lower parameter {bad} is a non-positive integer"),
        ));
    }
    let res = sum_by_ratio(Complex64::new(1.0, 0.0), |k| {
        let kf = k as f64;
        let num: f64 = a.iter().map(|&aj| aj + kf).product();
        let den: f64 = b.iter().map(|&bj| bj + kf).product::<f64>() * (kf + 1.0);
        w * (num / den)
    });
    res.checked("hypergeometric_pfq")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponential_series() {
        let res = sum_by_ratio(Complex64::new(1.0, 0.0), |k| Complex64::new(2.0 / (k as f64 + 1.0), 0.0));
        assert!((res.value.re - 2f64.exp()).abs() < 1e-14);
        assert!(!res.capped);
        assert!(res.tail_bound <= SERIES_TOLERANCE * res.value.norm());
    }

    #[test]
    fn cap_is_flagged() {
        let res = sum_by_ratio(Complex64::new(1.0, 0.0), |_| Complex64::new(1.0, 0.0));
        assert!(res.capped);
        assert_eq!(res.terms_used, MAX_TERMS);
        assert!(res.checked("test").is_err());
    }

    #[test]
    fn zero_first_term() {
        let res = sum_by_ratio(Complex64::new(0.0, 0.0), |_| Complex64::new(5.0, 0.0));
        assert_eq!(res.value, Complex64::new(0.0, 0.0));
        assert_eq!(res.terms_used, 1);
    }

    #[test]
    fn confluent_limit_matches_exp() {
        // 0F0(;;w) = e^w and 1F1(a; a; w) = e^w
        let w = Complex64::new(0.7, -1.3);
        let v = hypergeometric_pfq(&[], &[], w).unwrap().value;
        assert!((v - w.exp()).norm() < 1e-14);
        let v = hypergeometric_pfq(&[2.5], &[2.5], w).unwrap().value;
        assert!((v - w.exp()).norm() < 1e-14);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(hypergeometric_pfq(&[1.0, 2.0], &[3.0], Complex64::new(0.1, 0.0)).is_err());
        assert!(hypergeometric_pfq(&[1.0], &[-2.0], Complex64::new(0.1, 0.0)).is_err());
    }
}
