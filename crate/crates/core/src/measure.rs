//! Weight functions for the resolution of identity, including the numerical inverse Mellin
//! transform that defines the photon-added weight.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{domain, Error, Result};
use crate::quad::{gauss_legendre, integrate_breaks, QuadOptions};
use crate::specfun::{bessel_i_scaled, bessel_k_real_scaled, digamma, log_gamma_complex, log_gamma_unchecked};
use crate::states::{ln_fm, pacs_norm};

/// Bessel-product weight `(2/π) K_ℓ(2r) I_ℓ(2r)` of the `m = 0` states.
pub fn bg_weight(ell: f64, r: f64) -> Result<f64> {
    if !(r > 0.0) || !(ell >= 0.0) {
        return Err(domain("bg_weight", format!("need r > 0 and ell >= 0, got r = {r}, ell = {ell}")));
    }
    // The exponential scalings of K and I cancel.
    Ok(2.0 / PI * bessel_k_real_scaled(ell, 2.0 * r)? * bessel_i_scaled(ell, 2.0 * r)?)
}

/// Large-`r` expansion `(1/(2πr))(1 + (ℓ²/2 − 1/8)/r)`; the `1/r` correction is the one quoted
/// for this weight.
pub fn bg_weight_asymptotic(ell: f64, r: f64) -> f64 {
    (1.0 + (0.5 * ell * ell - 0.125) / r) / (2.0 * PI * r)
}

fn ln_mellin(ell: f64, m: usize, s: Complex64) -> Complex64 {
    let mf = m as f64;
    log_gamma_complex(s - mf + ell) * 2.0 + log_gamma_complex(s - mf) * 2.0
        - log_gamma_complex(s + ell)
        - log_gamma_complex(s)
}

/// `ln F_m(ℓ, s−m−1)` for real `s > m`.
pub fn ln_mellin_moment_target(ell: f64, m: usize, s: f64) -> Result<f64> {
    let mf = m as f64;
    if s <= mf {
        if (s - mf).fract() == 0.0 || (s - mf + ell).fract() == 0.0 {
            return Err(Error::MellinPole { s });
        }
        return Err(domain("mellin_moment_target", format!("need s > m = {m}, got {s}")));
    }
    Ok(2.0 * log_gamma_unchecked(s + ell - mf) + 2.0 * log_gamma_unchecked(s - mf)
        - log_gamma_unchecked(s + ell)
        - log_gamma_unchecked(s))
}

/// `[Γ(s+ℓ−m)]²[Γ(s−m)]² / (Γ(s+ℓ)Γ(s))`, the Mellin transform of `g_m^ℓ` at `s`.
pub fn mellin_moment_target(ell: f64, m: usize, s: f64) -> Result<f64> {
    Ok(ln_mellin_moment_target(ell, m, s)?.exp())
}

/// Real abscissa of the inversion contour for `g_m^ℓ(x)`.
///
/// The saddle of `Mel(c)·x^{−c}` on the real axis keeps the integrand no larger than the result,
/// avoiding cancellation far from `x ≈ 1`.
pub fn contour_abscissa(ell: f64, m: usize, x: f64) -> f64 {
    let mf = m as f64;
    let slope = |c: f64| {
        2.0 * digamma(c - mf + ell) + 2.0 * digamma(c - mf) - digamma(c + ell) - digamma(c) - x.ln()
    };
    let mut lo = mf + 1e-3;
    if slope(lo) >= 0.0 {
        return mf + 0.02;
    }
    let mut hi = mf + 1.0;
    while slope(hi) < 0.0 {
        lo = hi;
        hi = mf + 2.0 * (hi - mf);
    }
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        if slope(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (0.5 * (lo + hi)).max(mf + 0.02)
}

/// Inverse Mellin value with its error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MellinValue {
    pub value: f64,
    pub error: f64,
    pub contour: f64,
    /// `|τ|` beyond which the integrand was dropped.
    pub cutoff: f64,
}

const TAIL_DECADES: f64 = 40.0;
const MAX_CUTOFF: f64 = 400.0;

/// `g_m^ℓ(x) = (1/π) ∫₀^∞ Re[x^{−(c+iτ)} Mel(c+iτ)] dτ`.
pub fn mellin_inverse(ell: f64, m: usize, x: f64) -> Result<MellinValue> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(domain("mellin_inverse", format!("need x > 0, got {x}")));
    }
    if !(ell >= 0.0) {
        return Err(domain("mellin_inverse", format!("need ell >= 0, got {ell}")));
    }
    let c = contour_abscissa(ell, m, x);
    let ln_x = x.ln();
    let ln_mag = |tau: f64| ln_mellin(ell, m, Complex64::new(c, tau)).re - c * ln_x;
    let peak = ln_mag(0.0);
    let mut cutoff = 1.0;
    while ln_mag(cutoff) > peak - TAIL_DECADES {
        cutoff *= 1.5;
        if cutoff > MAX_CUTOFF {
            return Err(Error::Quadrature {
                function: "mellin_inverse",
                error: (ln_mag(cutoff) - peak).exp(),
                tolerance: (-TAIL_DECADES).exp(),
            });
        }
    }
    // Oscillation period of x^{−iτ} sets the panel width.
    let width = (2.0 * PI / ln_x.abs().max(1e-3)).min(1.0).max(cutoff / 400.0);
    let panels = (cutoff / width).ceil() as usize;
    let breaks: Vec<f64> = (0..=panels).map(|i| cutoff * i as f64 / panels as f64).collect();
    let scale = peak.exp();
    let mut f = |tau: f64| {
        let s = Complex64::new(c, tau);
        (ln_mellin(ell, m, s) - s * ln_x).exp().re
    };
    let opts = QuadOptions {
        abs_tol: 1e-14 * scale,
        rel_tol: 1e-12,
        max_intervals: 20_000,
    };
    let res = integrate_breaks(&mut f, &breaks, opts)?;
    Ok(MellinValue {
        value: res.value / PI,
        error: (res.error + scale * (-TAIL_DECADES).exp()) / PI,
        contour: c,
        cutoff,
    })
}

/// The density `g_m^ℓ(x)` whose Mellin transform is [`mellin_moment_target`].
pub fn pacs_weight_density(ell: f64, m: usize, x: f64) -> Result<f64> {
    Ok(mellin_inverse(ell, m, x)?.value)
}

/// `W_m^ℓ(r) = r^{2m} g_m^ℓ(r²) / [M_m^ℓ(r)]²`.
pub fn pacs_weight(ell: f64, m: usize, r: f64) -> Result<f64> {
    if !(r > 0.0) {
        return Err(domain("pacs_weight", format!("need r > 0, got {r}")));
    }
    let g = pacs_weight_density(ell, m, r * r)?;
    let ln_norm = pacs_norm(Complex64::new(r, 0.0), ell, m)?.ln();
    Ok(g * (2.0 * m as f64 * r.ln() - 2.0 * ln_norm).exp())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightMethod {
    /// Closed Bessel product; `m = 0` only.
    BesselProduct,
    /// Numerical inverse Mellin transform.
    MellinInversion,
}

/// Weight function `W_m^ℓ(r)` of the resolution of identity `∫ d²z/π |z⟩W⟨z| = I`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightFunction {
    pub ell: f64,
    pub m: usize,
    pub method: WeightMethod,
}

impl WeightFunction {
    pub fn new(ell: f64, m: usize, method: WeightMethod) -> Result<Self> {
        if method == WeightMethod::BesselProduct && m != 0 {
            return Err(domain("WeightFunction", "the Bessel product only exists for m = 0"));
        }
        if !(ell >= 0.0) {
            return Err(domain("WeightFunction", format!("need ell >= 0, got {ell}")));
        }
        Ok(Self { ell, m, method })
    }

    pub fn evaluate(&self, r: f64) -> Result<f64> {
        match self.method {
            WeightMethod::BesselProduct => Ok(PI * bg_weight(self.ell, r)?),
            WeightMethod::MellinInversion => pacs_weight(self.ell, self.m, r),
        }
    }
}

/// `g_m^ℓ` tabulated on composite Gauss-Legendre nodes in `y = ln x`.
#[derive(Debug, Clone)]
pub struct WeightTable {
    pub ell: f64,
    pub m: usize,
    pub y: Vec<f64>,
    pub weights: Vec<f64>,
    pub g: Vec<f64>,
    /// Largest Mellin error estimate relative to the tabulated value.
    pub max_relative_error: f64,
}

const PANEL_WIDTH: f64 = 0.5;
const PANEL_NODES: usize = 20;

impl WeightTable {
    /// Tabulates enough of the line to integrate `x^{s−1} g` for `m < s ≤ s_max`.
    pub fn new(ell: f64, m: usize, s_max: f64) -> Result<Self> {
        let mf = m as f64;
        if s_max <= mf {
            return Err(domain("WeightTable", "s_max must exceed m"));
        }
        // Left tail behaves like x^{s−m}|ln x|, right tail like x^s e^{−2 sqrt(x)}.
        let y_lo = -45.0;
        let mut y_hi: f64 = 2.0;
        while 2.0 * (0.5 * y_hi).exp() - s_max * y_hi < 45.0 {
            y_hi += 0.5;
        }
        let panels = ((y_hi - y_lo) / PANEL_WIDTH).ceil() as usize;
        let (gx, gw) = gauss_legendre(PANEL_NODES);
        let mut y = Vec::with_capacity(panels * PANEL_NODES);
        let mut weights = Vec::with_capacity(panels * PANEL_NODES);
        for p in 0..panels {
            let a = y_lo + p as f64 * PANEL_WIDTH;
            for (xi, wi) in gx.iter().zip(&gw) {
                y.push(a + 0.5 * PANEL_WIDTH * (xi + 1.0));
                weights.push(0.5 * PANEL_WIDTH * wi);
            }
        }
        let values: Vec<MellinValue> = y
            .par_iter()
            .map(|&yi| mellin_inverse(ell, m, yi.exp()))
            .collect::<Result<_>>()?;
        let max_relative_error = values
            .iter()
            .map(|v| v.error / v.value.abs().max(1e-300))
            .fold(0.0, f64::max);
        Ok(Self {
            ell,
            m,
            y,
            weights,
            g: values.iter().map(|v| v.value).collect(),
            max_relative_error,
        })
    }

    /// `∫₀^∞ x^{s−1} g(x) dx` by the tabulated rule.
    pub fn moment(&self, s: f64) -> f64 {
        self.y
            .iter()
            .zip(&self.weights)
            .zip(&self.g)
            .map(|((y, w), g)| w * (s * y).exp() * g)
            .sum()
    }

    /// Monotone cubic (Fritsch-Carlson) interpolation of `ln g` in `ln x`.
    pub fn interpolate(&self, x: f64) -> Result<f64> {
        let t = x.ln();
        let n = self.y.len();
        if !(t >= self.y[0] && t <= self.y[n - 1]) {
            return Err(domain("WeightTable::interpolate", format!("x = {x} outside the tabulated range")));
        }
        if self.g.iter().any(|&g| g <= 0.0) {
            return Err(domain("WeightTable::interpolate", "tabulated density is not positive"));
        }
        let i = self.y.partition_point(|&v| v <= t).clamp(1, n - 1) - 1;
        let f = |k: usize| self.g[k].ln();
        let secant = |k: usize| (f(k + 1) - f(k)) / (self.y[k + 1] - self.y[k]);
        let slope = |k: usize| -> f64 {
            if k == 0 {
                return secant(0);
            }
            if k == n - 1 {
                return secant(n - 2);
            }
            let (a, b) = (secant(k - 1), secant(k));
            if a * b <= 0.0 {
                0.0
            } else {
                let (h0, h1) = (self.y[k] - self.y[k - 1], self.y[k + 1] - self.y[k]);
                let (w1, w2) = (2.0 * h1 + h0, h1 + 2.0 * h0);
                (w1 + w2) / (w1 / a + w2 / b)
            }
        };
        let h = self.y[i + 1] - self.y[i];
        let s = (t - self.y[i]) / h;
        let (h00, h10, h01, h11) = (
            (1.0 + 2.0 * s) * (1.0 - s) * (1.0 - s),
            s * (1.0 - s) * (1.0 - s),
            s * s * (3.0 - 2.0 * s),
            s * s * (s - 1.0),
        );
        Ok((h00 * f(i) + h10 * h * slope(i) + h01 * f(i + 1) + h11 * h * slope(i + 1)).exp())
    }

    /// `|∫x^{n+m} g dx / F_m(ℓ,n) − 1|`, the diagonal defect of the resolution of identity at level `n+m`.
    pub fn identity_residual(&self, n: usize) -> f64 {
        let s = (n + self.m) as f64 + 1.0;
        (self.moment(s) / ln_fm(self.ell, self.m, n).exp() - 1.0).abs()
    }
}

/// Diagonal defect `|2∫₀^∞ r^{1+2n} W_m(r) M_m(r)² dr / F_m(ℓ,n) − 1|` at level `n + m`.
///
/// The Bessel route integrates the closed weight radially; the Mellin route integrates the
/// tabulated `g_m` in `ln x`.
pub fn identity_resolution_residual(ell: f64, m: usize, n: usize, method: WeightMethod) -> Result<f64> {
    match method {
        WeightMethod::BesselProduct => {
            if m != 0 {
                return Err(domain("identity_resolution_residual", "the Bessel product only exists for m = 0"));
            }
            bessel_identity_residual(ell, n)
        }
        WeightMethod::MellinInversion => {
            let table = WeightTable::new(ell, m, (n + m) as f64 + 1.0)?;
            Ok(table.identity_residual(n))
        }
    }
}

fn bessel_identity_residual(ell: f64, n: usize) -> Result<f64> {
    let ln_f = ln_fm(ell, 0, n);
    let mut f = |r: f64| {
        if r == 0.0 {
            return 0.0;
        }
        let x = 2.0 * r;
        let (Ok(w), Ok(i)) = (bg_weight(ell, r), bessel_i_scaled(ell, x)) else {
            return f64::NAN;
        };
        // W_0 = π·bg_weight and M_0² = r^ℓ / I_ℓ(2r), with I in scaled form.
        2.0 * PI * w * ((1.0 + 2.0 * n as f64 + ell) * r.ln() - x - i.ln() - ln_f).exp()
    };
    let peak = (n as f64 + 0.5 * ell).sqrt().max(0.5);
    let top = peak + 60.0 + 3.0 * (n as f64 + ell);
    let breaks = [0.0, 0.5 * peak, peak, 2.0 * peak, top];
    let res = integrate_breaks(&mut f, &breaks, QuadOptions::rel(1e-12).with_abs(1e-14))?;
    Ok((res.value - 1.0).abs())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn target_values() {
        assert!((mellin_moment_target(1.3, 0, 1.0).unwrap() - log_gamma_unchecked(2.3).exp()).abs() < 1e-13);
        assert!(matches!(mellin_moment_target(1.0, 2, 2.0), Err(Error::MellinPole { .. })));
        assert!(matches!(mellin_moment_target(1.0, 2, 1.0), Err(Error::MellinPole { .. })));
    }

    #[test]
    fn contour_is_right_of_poles() {
        for &x in &[1e-12, 1e-3, 1.0, 50.0, 1e4] {
            for m in 0..4 {
                assert!(contour_abscissa(1.5, m, x) > m as f64);
            }
        }
    }
}
