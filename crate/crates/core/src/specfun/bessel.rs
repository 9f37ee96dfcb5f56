//! Modified Bessel functions `I_ν`, `K_ν` and the ordinary `J_α` of complex argument.

use num_complex::Complex64;

use super::gamma::log_gamma_unchecked;
use super::series::{sum_by_ratio, SeriesResult};
use crate::error::{domain, Error, Result};
use crate::quad::{integrate_breaks, QuadOptions};

/// Largest argument for which `e^x` is finite.
const EXP_LIMIT: f64 = 709.78;

fn series_crossover(nu: f64) -> f64 {
    (nu * nu).max(30.0)
}

/// `e^{-x} I_ν(x)` for `ν ≥ 0`, `x ≥ 0`.
pub fn bessel_i_scaled(nu: f64, x: f64) -> Result<f64> {
    if !(nu >= 0.0) || !(x >= 0.0) || !nu.is_finite() || !x.is_finite() {
        return Err(domain("bessel_i", format!("need nu >= 0 and x >= 0, got nu = {nu}, x = {x}")));
    }
    if x == 0.0 {
        return Ok(if nu == 0.0 { 1.0 } else { 0.0 });
    }
    if x <= series_crossover(nu) {
        Ok(ascending_i_scaled(nu, x))
    } else {
        Ok(asymptotic_i_scaled(nu, x))
    }
}

/// `I_ν(x)` for `ν ≥ 0`, `x ≥ 0`.
pub fn bessel_i(nu: f64, x: f64) -> Result<f64> {
    let scaled = bessel_i_scaled(nu, x)?;
    if x > EXP_LIMIT {
        return Err(Error::Overflow {
            function: "bessel_i",
            detail: format!("e^x overflows for x = {x}"),
        });
    }
    Ok(scaled * x.exp())
}

/// `ln I_ν(x)` for `ν ≥ 0`, `x > 0`; finite well past the range of [`bessel_i`].
pub fn ln_bessel_i(nu: f64, x: f64) -> Result<f64> {
    if x > 0.0 && x <= series_crossover(nu) {
        return Ok(ln_ascending_i(nu, x));
    }
    Ok(bessel_i_scaled(nu, x)?.ln() + x)
}

fn ln_ascending_i(nu: f64, x: f64) -> f64 {
    // (x/2)^ν / Γ(ν+1) · Σ_k (x²/4)^k / (k! (ν+1)_k), rescaled to avoid overflow.
    let q = 0.25 * x * x;
    let mut term = 1.0_f64;
    let mut sum = 1.0_f64;
    let mut ln_scale = 0.0_f64;
    let mut k = 0usize;
    loop {
        let kf = k as f64;
        term *= q / ((kf + 1.0) * (kf + nu + 1.0));
        sum += term;
        k += 1;
        if sum > 1e250 {
            sum *= 1e-250;
            term *= 1e-250;
            ln_scale += 250.0 * std::f64::consts::LN_10;
        }
        if term <= 1e-17 * sum && kf + 1.0 > 0.5 * x {
            break;
        }
    }
    nu * (0.5 * x).ln() - log_gamma_unchecked(nu + 1.0) + sum.ln() + ln_scale
}

fn ascending_i_scaled(nu: f64, x: f64) -> f64 {
    (ln_ascending_i(nu, x) - x).exp()
}

fn asymptotic_i_scaled(nu: f64, x: f64) -> f64 {
    let mu = 4.0 * nu * nu;
    let mut term = 1.0_f64;
    let mut sum = 1.0_f64;
    let mut prev = f64::INFINITY;
    for k in 1..200 {
        let kf = k as f64;
        let odd = 2.0 * kf - 1.0;
        term *= -(mu - odd * odd) / (kf * 8.0 * x);
        if term.abs() >= prev {
            break;
        }
        sum += term;
        prev = term.abs();
        if prev <= 1e-17 * sum.abs() {
            break;
        }
    }
    sum / (2.0 * std::f64::consts::PI * x).sqrt()
}

/// Result of a complex-order `K` evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BesselKValue {
    /// `e^{x} K_ν(x)`.
    pub scaled: Complex64,
    /// Upper limit of the truncated `t`-integral.
    pub cutoff: f64,
    /// Quadrature error estimate on `scaled`.
    pub error: f64,
}

impl BesselKValue {
    pub fn value(&self, x: f64) -> Complex64 {
        self.scaled * (-x).exp()
    }
}

/// `e^{x} K_ν(x)` for complex order and `x > 0`, via
/// `K_ν(x) = ∫_0^∞ e^{-x cosh t} cosh(νt) dt` truncated where the integrand
/// has fallen below `1e-18` of its peak.
pub fn bessel_k_scaled(nu: Complex64, x: f64) -> Result<BesselKValue> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(domain("bessel_k", format!("argument x = {x} must be positive")));
    }
    if !nu.re.is_finite() || !nu.im.is_finite() {
        return Err(domain("bessel_k", format!("order {nu} is not finite")));
    }
    let a = nu.re.abs();
    // log of the envelope e^{-x(cosh t - 1)} e^{a t}
    let log_env = |t: f64| -x * (t.cosh() - 1.0) + a * t;
    let peak = if a > 0.0 { (a / x).asinh() } else { 0.0 };
    let log_peak = log_env(peak);
    let floor = log_peak - 18.0 * std::f64::consts::LN_10 - 2.0;
    let mut hi = peak + 1.0;
    while log_env(hi) > floor {
        hi = peak + 2.0 * (hi - peak);
        if hi > 1e3 {
            return Err(Error::SeriesCap {
                function: "bessel_k",
                terms: 0,
                tail: log_env(hi).exp(),
            });
        }
    }
    let mut lo = peak;
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        if log_env(mid) > floor {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let cutoff = hi;
    let mut f = |t: f64| {
        let damp = (-x * (t.cosh() - 1.0)).exp();
        (nu * t).cosh() * damp
    };
    let mut breaks = vec![0.0];
    if peak > 0.0 && peak < cutoff {
        breaks.push(peak);
    }
    // Oscillation from the imaginary part of the order.
    let period_breaks = ((nu.im.abs() * cutoff) / std::f64::consts::PI).ceil() as usize;
    let pieces = period_breaks.clamp(1, 400);
    let mut edges: Vec<f64> = (1..=pieces).map(|i| cutoff * i as f64 / pieces as f64).collect();
    breaks.append(&mut edges);
    breaks.sort_by(|p, q| p.total_cmp(q));
    breaks.dedup();
    // For large |Im ν| the result is exponentially smaller than the integrand,
    // so the attainable accuracy is set by the integral of the envelope.
    let abs_tol = if nu.im == 0.0 {
        1e-300
    } else {
        let mut env = |t: f64| (a * t - x * (t.cosh() - 1.0)).exp() * 0.5 * (1.0 + (-2.0 * a * t).exp());
        1e-13 * integrate_breaks(&mut env, &breaks, QuadOptions::rel(1e-3))?.value
    };
    let res = integrate_breaks(&mut f, &breaks, QuadOptions::rel(1e-13).with_abs(abs_tol))?;
    Ok(BesselKValue {
        scaled: res.value,
        cutoff,
        error: res.error,
    })
}

/// `K_ν(x)` for complex order.
pub fn bessel_k(nu: Complex64, x: f64) -> Result<Complex64> {
    let v = bessel_k_scaled(nu, x)?;
    Ok(v.value(x))
}

/// `K_ν(x)` for real order.
pub fn bessel_k_real(nu: f64, x: f64) -> Result<f64> {
    Ok(bessel_k(Complex64::new(nu, 0.0), x)?.re)
}

/// `e^{x} K_ν(x)` for real order.
pub fn bessel_k_real_scaled(nu: f64, x: f64) -> Result<f64> {
    Ok(bessel_k_scaled(Complex64::new(nu, 0.0), x)?.scaled.re)
}

/// `K_ν(w)` for complex argument `Re w > 0`, same integral representation.
/// Used only on the non-static Wigner path.
pub fn bessel_k_complex_arg(nu: Complex64, w: Complex64) -> Result<Complex64> {
    if !(w.re > 0.0) {
        return Err(domain("bessel_k", format!("argument {w} must have positive real part")));
    }
    let x = w.re;
    let a = nu.re.abs();
    let log_env = |t: f64| -x * t.cosh() + a * t;
    let peak = if a > 0.0 { (a / x).asinh() } else { 0.0 };
    let floor = log_env(peak) - 18.0 * std::f64::consts::LN_10 - 2.0;
    let mut cutoff = peak + 1.0;
    while log_env(cutoff) > floor {
        cutoff += 1.0;
    }
    let pieces = (((nu.im.abs() + w.im.abs() * cutoff.cosh()) * cutoff / std::f64::consts::PI).ceil() as usize)
        .clamp(1, 2000);
    let breaks: Vec<f64> = (0..=pieces).map(|i| cutoff * i as f64 / pieces as f64).collect();
    let mut f = |t: f64| (-w * t.cosh()).exp() * (nu * t).cosh();
    Ok(integrate_breaks(&mut f, &breaks, QuadOptions::rel(1e-12).with_abs(1e-300))?.value)
}

fn ascending_bessel(alpha: f64, w: Complex64, sign: f64, function: &'static str) -> Result<SeriesResult> {
    if !(alpha >= 0.0) {
        return Err(domain(function, format!("order {alpha} must be non-negative")));
    }
    let zero = Complex64::new(0.0, 0.0);
    if w == zero {
        let v = if alpha == 0.0 { 1.0 } else { 0.0 };
        return Ok(SeriesResult {
            value: Complex64::new(v, 0.0),
            terms_used: 1,
            tail_bound: 0.0,
            capped: false,
        });
    }
    let half = w * 0.5;
    let first = (half.ln() * alpha - log_gamma_unchecked(alpha + 1.0)).exp();
    let q = half * half * sign;
    let res = sum_by_ratio(first, |k| {
        let kf = k as f64;
        q / ((kf + 1.0) * (kf + alpha + 1.0))
    });
    res.checked(function)
}

/// `J_α(w)` by its ascending series.
pub fn bessel_j_complex(alpha: f64, w: Complex64) -> Result<SeriesResult> {
    ascending_bessel(alpha, w, -1.0, "bessel_j_complex")
}

/// `I_α(w)` for complex argument by its ascending series.
pub fn bessel_i_complex(alpha: f64, w: Complex64) -> Result<SeriesResult> {
    ascending_bessel(alpha, w, 1.0, "bessel_i_complex")
}
