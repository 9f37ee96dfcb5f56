//! Barut-Girardello-like coherent states and their photon-added variants in the number basis.

use num_complex::Complex64;

use crate::algebra::{ladder_matrix, LadderKind};
use crate::dynamics::Frame;
use crate::error::{domain, Error, Result};
use crate::specfun::{bessel_i, bessel_i_complex, bessel_j_complex, hypergeometric_pfq, laguerre_sequence, log_gamma_unchecked};

/// Stop adding levels once a term falls below this fraction of the partial sum.
pub const TRUNCATION_RATIO: f64 = 1e-30;
/// Hard cap on the number of series terms.
pub const MAX_LEVELS: usize = 50_000;

/// Label of a coherent state: `z`, Bargmann index `ℓ ≥ 0` and number of added quanta `m`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StateSpec {
    pub z: Complex64,
    pub ell: f64,
    pub m: usize,
}

impl StateSpec {
    pub fn new(z: Complex64, ell: f64, m: usize) -> Result<Self> {
        if !(ell >= 0.0) || !ell.is_finite() {
            return Err(domain("StateSpec", format!("ell must be finite and >= 0, got {ell}")));
        }
        if !z.re.is_finite() || !z.im.is_finite() {
            return Err(domain("StateSpec", "z must be finite"));
        }
        Ok(Self { z, ell, m })
    }

    pub fn bg(z: Complex64, ell: f64) -> Result<Self> {
        Self::new(z, ell, 0)
    }
}

/// `ln F_m(ℓ, n) = 2 lnΓ(n+ℓ+1) + 2 lnΓ(n+1) − lnΓ(n+m+ℓ+1) − lnΓ(n+m+1)`.
pub fn ln_fm(ell: f64, m: usize, n: usize) -> f64 {
    let (n, m) = (n as f64, m as f64);
    2.0 * log_gamma_unchecked(n + ell + 1.0) + 2.0 * log_gamma_unchecked(n + 1.0)
        - log_gamma_unchecked(n + m + ell + 1.0)
        - log_gamma_unchecked(n + m + 1.0)
}

pub fn fm_factor(ell: f64, m: usize, n: usize) -> f64 {
    ln_fm(ell, m, n).exp()
}

/// Log-weights `ln(|z|^{2n}/F_m(ℓ,n))` summed until the relative truncation criterion holds.
struct WeightSeries {
    ln_terms: Vec<f64>,
    ln_sum: f64,
}

fn weight_series(r: f64, ell: f64, m: usize, min_terms: usize) -> Result<WeightSeries> {
    if r == 0.0 {
        return Ok(WeightSeries {
            ln_terms: vec![-ln_fm(ell, m, 0)],
            ln_sum: -ln_fm(ell, m, 0),
        });
    }
    let ln_r2 = 2.0 * r.ln();
    let mut ln_terms = Vec::new();
    let mut ln_sum = f64::NEG_INFINITY;
    for n in 0..MAX_LEVELS {
        let t = n as f64 * ln_r2 - ln_fm(ell, m, n);
        ln_sum = if ln_sum == f64::NEG_INFINITY {
            t
        } else {
            let hi = ln_sum.max(t);
            hi + ((ln_sum - hi).exp() + (t - hi).exp()).ln()
        };
        ln_terms.push(t);
        // Terms are unimodal in n; once past the peak the criterion is final.
        let decreasing = n > 0 && t < ln_terms[n - 1];
        if decreasing && n + 1 >= min_terms && t - ln_sum <= TRUNCATION_RATIO.ln() {
            return Ok(WeightSeries { ln_terms, ln_sum });
        }
    }
    Err(Error::SeriesCap {
        function: "weight_series",
        terms: MAX_LEVELS,
        tail: ln_terms.last().map_or(0.0, |t| (t - ln_sum).exp()),
    })
}

/// `[Σ_n |z|^{2n}/F_m(ℓ,n)]^{−1/2}`.
pub fn pacs_norm(z: Complex64, ell: f64, m: usize) -> Result<f64> {
    StateSpec::new(z, ell, m)?;
    Ok((-0.5 * weight_series(z.norm(), ell, m, 1)?.ln_sum).exp())
}

/// `sqrt(|z|^ℓ / I_ℓ(2|z|))`, with the limit `sqrt(Γ(ℓ+1))` at `z = 0`.
pub fn bg_norm(z: Complex64, ell: f64) -> Result<f64> {
    pacs_norm(z, ell, 0)
}

/// Normalised expansion coefficients over number levels `k = 0..len`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientVector {
    pub spec: StateSpec,
    pub norm: f64,
    /// Coefficient of `|ψ_k^ℓ⟩`; zero for `k < m`.
    pub coeffs: Vec<Complex64>,
    /// Number of series terms `n` kept (levels `m..m+n_terms`).
    pub n_terms: usize,
    /// Probability carried by the discarded levels.
    pub tail_mass: f64,
}

impl CoefficientVector {
    pub fn levels(&self) -> usize {
        self.coeffs.len()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }

    /// Coefficient of level `k`, zero beyond the truncation.
    pub fn level(&self, k: usize) -> Complex64 {
        self.coeffs.get(k).copied().unwrap_or_default()
    }
}

/// Builds the coefficients of the state; `min_terms` forces at least that many series terms.
pub fn build_coefficients(spec: &StateSpec, min_terms: usize) -> Result<CoefficientVector> {
    let spec = StateSpec::new(spec.z, spec.ell, spec.m)?;
    let r = spec.z.norm();
    let series = weight_series(r, spec.ell, spec.m, min_terms.max(1))?;
    let ln_norm = -0.5 * series.ln_sum;
    let arg = spec.z.arg();
    let mut coeffs = vec![Complex64::new(0.0, 0.0); spec.m];
    for (n, &t) in series.ln_terms.iter().enumerate() {
        let modulus = (0.5 * t + ln_norm).exp();
        coeffs.push(Complex64::from_polar(modulus, n as f64 * arg));
    }
    let n_terms = series.ln_terms.len();
    let tail_mass = if r == 0.0 {
        0.0
    } else {
        let ln_r2 = 2.0 * r.ln();
        let mut tail = 0.0;
        for n in n_terms..n_terms + 200 {
            let w = (n as f64 * ln_r2 - ln_fm(spec.ell, spec.m, n) - series.ln_sum).exp();
            tail += w;
            if w <= 1e-20 * tail.max(1e-300) {
                break;
            }
        }
        tail
    };
    Ok(CoefficientVector {
        spec,
        norm: ln_norm.exp(),
        coeffs,
        n_terms,
        tail_mass,
    })
}

/// `‖K₋c − z c‖ / ‖c‖` over all but the last kept level.
pub fn lowering_eigenvalue_residual(coeffs: &CoefficientVector) -> f64 {
    let len = coeffs.levels();
    if len < 2 {
        return if coeffs.spec.z == Complex64::new(0.0, 0.0) { 0.0 } else { f64::NAN };
    }
    let km = ladder_matrix(LadderKind::Lower, coeffs.spec.ell, len);
    let lowered = km.apply(&coeffs.coeffs);
    let z = coeffs.spec.z;
    let mut res = 0.0;
    for k in 0..len - 1 {
        res += (lowered[k] - z * coeffs.coeffs[k]).norm_sqr();
    }
    res.sqrt() / coeffs.norm_sqr().sqrt()
}

fn check_same_ell(a: &StateSpec, b: &StateSpec) -> Result<()> {
    if a.ell != b.ell {
        return Err(Error::IndexMismatch(a.ell, b.ell));
    }
    Ok(())
}

/// `⟨bra|ket⟩` as an inner product of coefficient vectors.
pub fn overlap(bra: &StateSpec, ket: &StateSpec) -> Result<Complex64> {
    check_same_ell(bra, ket)?;
    let a = build_coefficients(bra, 1)?;
    let b = build_coefficients(ket, 1)?;
    Ok(inner(&a, &b))
}

/// `Σ_k conj(a_k) b_k`.
pub fn inner(a: &CoefficientVector, b: &CoefficientVector) -> Complex64 {
    a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x.conj() * y).sum()
}

/// Closed-form overlap of two `m = 0` states, `M₁M₂ (z₁*z₂)^{−ℓ/2} I_ℓ(2 sqrt(z₁*z₂))`.
pub fn bg_overlap_closed(z1: Complex64, z2: Complex64, ell: f64) -> Result<Complex64> {
    let w = z1.conj() * z2;
    let norms = bg_norm(z1, ell)? * bg_norm(z2, ell)?;
    if w == Complex64::new(0.0, 0.0) {
        return Ok(Complex64::new(norms / log_gamma_unchecked(ell + 1.0).exp(), 0.0));
    }
    let s = w.sqrt();
    let i = bessel_i_complex(ell, 2.0 * s)?.value;
    Ok(i * w.powf(-0.5 * ell) * norms)
}

/// Overlap `⟨z′m′|zm⟩` from its ₂F₃ representation (either ordering of `m`, `m′`).
pub fn pacs_overlap_hypergeometric(bra: &StateSpec, ket: &StateSpec) -> Result<Complex64> {
    check_same_ell(bra, ket)?;
    if ket.m < bra.m {
        return Ok(pacs_overlap_hypergeometric(ket, bra)?.conj());
    }
    let ell = bra.ell;
    let (m, mp) = (ket.m as f64, bra.m as f64);
    let d = m - mp;
    let ln_pref = log_gamma_unchecked(m + 1.0) + log_gamma_unchecked(m + ell + 1.0)
        - log_gamma_unchecked(d + 1.0)
        - log_gamma_unchecked(d + ell + 1.0)
        - log_gamma_unchecked(ell + 1.0);
    let w = bra.z.conj() * ket.z;
    let f = hypergeometric_pfq(&[m + 1.0, m + ell + 1.0], &[d + 1.0, d + ell + 1.0, ell + 1.0], w)?.value;
    let power = if ket.m == bra.m {
        Complex64::new(1.0, 0.0)
    } else {
        bra.z.conj().powu((ket.m - bra.m) as u32)
    };
    let norms = pacs_norm(bra.z, ell, bra.m)? * pacs_norm(ket.z, ell, ket.m)?;
    Ok(power * f * (ln_pref.exp() * norms))
}

/// `‖|ψ⟩ − |ψ′⟩‖²`, equal to `2[1 − Re⟨ψ′|ψ⟩]` for normalised states.
pub fn label_continuity_gap(spec: &StateSpec, other: &StateSpec) -> Result<f64> {
    check_same_ell(spec, other)?;
    let a = build_coefficients(spec, 1)?;
    let b = build_coefficients(other, 1)?;
    let len = a.levels().max(b.levels());
    Ok((0..len).map(|k| (a.level(k) - b.level(k)).norm_sqr()).sum())
}

/// Value of the state in the scaled radial variable `u = κr²/ρ²` at the frame's angle.
///
/// Each level carries its own phase `e^{iγ_k}`.
pub fn state_wavefunction(coeffs: &CoefficientVector, frame: &Frame, u: f64) -> Result<Complex64> {
    if !(u >= 0.0) {
        return Err(domain("state_wavefunction", format!("u must be >= 0, got {u}")));
    }
    let ell = coeffs.spec.ell;
    let len = coeffs.levels();
    let lag = laguerre_sequence(len - 1, ell, u)?;
    let varpi = frame.varpi();
    let ln_u = u.ln();
    let mut sum = Complex64::new(0.0, 0.0);
    for k in coeffs.spec.m..len {
        let c = coeffs.coeffs[k];
        if c == Complex64::new(0.0, 0.0) {
            continue;
        }
        let kf = k as f64;
        let ln_norm = 0.5 * (log_gamma_unchecked(kf + 1.0) - log_gamma_unchecked(kf + ell + 1.0));
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        sum += c * Complex64::from_polar(sign * ln_norm.exp() * lag[k], frame.gamma(k, ell));
    }
    let power = if ell == 0.0 { 1.0 } else { (0.5 * ell * ln_u).exp() };
    Ok(frame.angular_factor(ell) * (-0.5 * varpi * u).exp() * sum * power)
}

/// Barut-Girardello state wavefunction by its number-state series.
pub fn bg_wavefunction(spec: &StateSpec, frame: &Frame, u: f64) -> Result<Complex64> {
    if spec.m != 0 {
        return Err(domain("bg_wavefunction", "requires m = 0"));
    }
    state_wavefunction(&build_coefficients(spec, 1)?, frame, u)
}

/// Barut-Girardello wavefunction from the Laguerre generating function.
///
/// Uses `γ_n = γ_0 + nδ`, so the alternating sign and the phase steps fold into `w = −z e^{iδ}`.
pub fn bg_wavefunction_closed(spec: &StateSpec, frame: &Frame, u: f64) -> Result<Complex64> {
    if spec.m != 0 {
        return Err(domain("bg_wavefunction_closed", "requires m = 0"));
    }
    let ell = spec.ell;
    let r = spec.z.norm();
    let w = -spec.z * Complex64::from_polar(1.0, frame.gamma_step());
    let uw = w * u;
    // (uw)^{−ℓ/2} J_ℓ(2 sqrt(uw)), an entire function of uw.
    let reduced = if uw == Complex64::new(0.0, 0.0) {
        Complex64::new((-log_gamma_unchecked(ell + 1.0)).exp(), 0.0)
    } else {
        bessel_j_complex(ell, 2.0 * uw.sqrt())?.value * uw.powf(-0.5 * ell)
    };
    let norm = if r == 0.0 {
        log_gamma_unchecked(ell + 1.0).exp().sqrt()
    } else {
        (r.powf(ell) / bessel_i(ell, 2.0 * r)?).sqrt()
    };
    let power = if ell == 0.0 { 1.0 } else { u.powf(0.5 * ell) };
    Ok(frame.angular_factor(ell)
        * Complex64::from_polar(norm * power, frame.gamma(0, ell))
        * (w - 0.5 * frame.varpi() * u).exp()
        * reduced)
}

/// Photon-added state wavefunction by its number-state series.
pub fn pacs_wavefunction(spec: &StateSpec, frame: &Frame, u: f64) -> Result<Complex64> {
    state_wavefunction(&build_coefficients(spec, 1)?, frame, u)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fm_reduces_to_bg_weights() {
        for n in 0..10 {
            let expected = log_gamma_unchecked(n as f64 + 1.0) + log_gamma_unchecked(n as f64 + 1.5 + 1.0);
            assert!((ln_fm(1.5, 0, n) - expected).abs() < 1e-12);
        }
    }

    #[test]
    fn vacuum_coefficients() {
        let c = build_coefficients(&StateSpec::new(Complex64::new(0.0, 0.0), 1.0, 2).unwrap(), 1).unwrap();
        assert_eq!(c.levels(), 3);
        assert!((c.coeffs[2].norm() - 1.0).abs() < 1e-15);
        assert_eq!(c.tail_mass, 0.0);
    }

    #[test]
    fn rejects_negative_ell() {
        assert!(StateSpec::new(Complex64::new(1.0, 0.0), -0.5, 0).is_err());
    }
}
