//! Photon-number statistics: distribution, moments, `g²` and the Mandel parameter.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::specfun::{bessel_i_scaled, log_gamma_unchecked};
use crate::states::{build_coefficients, ln_fm, pacs_norm, StateSpec};

/// Below this `|⟨N⟩|`, `g²` is reported as undefined.
pub const MEAN_FLOOR: f64 = 1e-8;

/// Photon-number distribution; `probabilities[n]` belongs to level `n + offset`.
#[derive(Debug, Clone, PartialEq)]
pub struct Pnd {
    pub probabilities: Vec<f64>,
    pub offset: usize,
}

impl Pnd {
    pub fn total(&self) -> f64 {
        self.probabilities.iter().sum()
    }

    /// Probability of finding absolute level `k`.
    pub fn level(&self, k: usize) -> f64 {
        k.checked_sub(self.offset)
            .and_then(|n| self.probabilities.get(n).copied())
            .unwrap_or(0.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhotonStatistics {
    pub mean_n: f64,
    pub mean_n2: f64,
    pub g2: f64,
    pub q_mandel: f64,
    /// Bound on the moment error caused by truncating the level series.
    pub truncation_error: f64,
}

/// `P_n = M²|z|^{2n}/F_m(ℓ,n)` for `n = 0..=n_max`, or over every kept level when `n_max` is `None`.
pub fn pnd(spec: &StateSpec, n_max: Option<usize>) -> Result<Pnd> {
    let n_max = match n_max {
        Some(n) => n,
        None => build_coefficients(spec, 1)?.n_terms - 1,
    };
    let ln_norm2 = 2.0 * pacs_norm(spec.z, spec.ell, spec.m)?.ln();
    let r = spec.z.norm();
    let probabilities = (0..=n_max)
        .map(|n| {
            if r == 0.0 {
                return if n == 0 { (ln_norm2 - ln_fm(spec.ell, spec.m, 0)).exp() } else { 0.0 };
            }
            (ln_norm2 + 2.0 * n as f64 * r.ln() - ln_fm(spec.ell, spec.m, n)).exp()
        })
        .collect();
    Ok(Pnd {
        probabilities,
        offset: spec.m,
    })
}

struct Moments {
    mean: f64,
    variance: f64,
    truncation_error: f64,
}

fn moments(spec: &StateSpec) -> Result<Moments> {
    let cv = build_coefficients(spec, 1)?;
    let probs: Vec<f64> = cv.coeffs.iter().map(|c| c.norm_sqr()).collect();
    let total: f64 = probs.iter().sum();
    let mean = probs.iter().enumerate().map(|(k, p)| k as f64 * p).sum::<f64>() / total;
    let variance = probs
        .iter()
        .enumerate()
        .map(|(k, p)| (k as f64 - mean).powi(2) * p)
        .sum::<f64>()
        / total;
    let top = cv.levels() as f64 + 1.0;
    Ok(Moments {
        mean,
        variance,
        truncation_error: cv.tail_mass * top * top,
    })
}

/// `⟨N⟩` and `⟨N²⟩`, counting the absolute level `n + m`.
pub fn mean_photon_number(spec: &StateSpec) -> Result<(f64, f64)> {
    let mo = moments(spec)?;
    Ok((mo.mean, mo.variance + mo.mean * mo.mean))
}

fn undefined(quantity: &'static str, mean: f64) -> Error {
    Error::UndefinedPoint { quantity, mean }
}

/// All moments at once from the level series.
pub fn statistics(spec: &StateSpec) -> Result<PhotonStatistics> {
    let mo = moments(spec)?;
    if mo.mean.abs() < MEAN_FLOOR {
        return Err(undefined("g2", mo.mean));
    }
    let g2 = 1.0 + (mo.variance - mo.mean) / (mo.mean * mo.mean);
    Ok(PhotonStatistics {
        mean_n: mo.mean,
        mean_n2: mo.variance + mo.mean * mo.mean,
        g2,
        q_mandel: mo.mean * (g2 - 1.0),
        truncation_error: mo.truncation_error,
    })
}

/// Intensity correlation `(⟨N²⟩ − ⟨N⟩)/⟨N⟩²`.
pub fn g2(spec: &StateSpec) -> Result<f64> {
    Ok(statistics(spec)?.g2)
}

/// Mandel parameter `⟨N⟩(g² − 1)`.
///
/// At the vacuum (`z = 0`, `m = 0`) the continuous limit `0` is returned.
pub fn mandel_q(spec: &StateSpec) -> Result<f64> {
    match statistics(spec) {
        Ok(s) => Ok(s.q_mandel),
        Err(Error::UndefinedPoint { .. }) if spec.m == 0 && spec.z == Complex64::new(0.0, 0.0) => Ok(0.0),
        Err(e) => Err(e),
    }
}

/// `G(i) = (−1)^i Σ_n n(n−1)…(n−i+1) |z|^{2n}/F_m(ℓ,n)`, so that
/// `⟨N⟩ = m − G(1)/G(0)` and `⟨N²⟩ = m² − (2m+1)G(1)/G(0) + G(2)/G(0)`.
pub fn meijer_g_moment(i: usize, spec: &StateSpec) -> Result<f64> {
    if i > 2 {
        return Err(crate::error::domain("meijer_g_moment", format!("i must be 0, 1 or 2, got {i}")));
    }
    let r = spec.z.norm();
    let n_terms = build_coefficients(spec, 1)?.n_terms;
    let sign = if i.is_multiple_of(2) { 1.0 } else { -1.0 };
    let mut sum = 0.0;
    for n in i..n_terms + 4 {
        let falling: f64 = (0..i).map(|j| (n - j) as f64).product();
        let ln_w = if r == 0.0 {
            if n > 0 {
                continue;
            }
            -ln_fm(spec.ell, spec.m, 0)
        } else {
            2.0 * n as f64 * r.ln() - ln_fm(spec.ell, spec.m, n)
        };
        sum += falling * ln_w.exp();
    }
    if !sum.is_finite() {
        return Err(Error::Overflow {
            function: "meijer_g_moment",
            detail: format!("|z| = {r} is too large for the unnormalised sum"),
        });
    }
    Ok(sign * sum)
}

/// Closed Bessel forms for `m = 0`: `(⟨N⟩, ⟨N²⟩, g², Q)` from ratios of `I_{ℓ+k}(2|z|)`.
pub fn bg_statistics_closed(z: Complex64, ell: f64) -> Result<PhotonStatistics> {
    let r = z.norm();
    if r < MEAN_FLOOR {
        return Err(undefined("g2", r));
    }
    let x = 2.0 * r;
    let i0 = bessel_i_scaled(ell, x)?;
    let i1 = bessel_i_scaled(ell + 1.0, x)?;
    let i2 = bessel_i_scaled(ell + 2.0, x)?;
    let mean = r * i1 / i0;
    let g2 = i2 * i0 / (i1 * i1);
    Ok(PhotonStatistics {
        mean_n: mean,
        mean_n2: r * r * i2 / i0 + mean,
        g2,
        q_mandel: r * (i2 * i0 - i1 * i1) / (i1 * i0),
        truncation_error: 0.0,
    })
}

/// Small-`|z|` limit of `g²` for `m = 0`: `(ℓ+1)/(ℓ+2)`.
pub fn g2_small_z_limit(ell: f64) -> f64 {
    (ell + 1.0) / (ell + 2.0)
}

/// Small-`|z|` limit of the Mandel parameter for `m = 0`: `−|z|²/((ℓ+1)(ℓ+2))`.
pub fn mandel_q_small_z(z: Complex64, ell: f64) -> f64 {
    -z.norm_sqr() / ((ell + 1.0) * (ell + 2.0))
}

/// Small-`|z|` limit of the distribution for `m = 0`: `|z|^{2n}Γ(ℓ+1)/(n!Γ(n+ℓ+1))`.
pub fn pnd_small_z(z: Complex64, ell: f64, n: usize) -> f64 {
    let nf = n as f64;
    (2.0 * nf * z.norm().ln() + log_gamma_unchecked(ell + 1.0)
        - log_gamma_unchecked(nf + 1.0)
        - log_gamma_unchecked(nf + ell + 1.0))
    .exp()
}
