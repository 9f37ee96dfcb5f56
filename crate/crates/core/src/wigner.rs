//! Wigner quasi-distribution of the radial part of a state.
//!
//! The transform acts on `Φ(x) = ψ(u = e^{−x})`, where `u = κr²/ρ²` is the
//! scaled radial variable and `x` is its exponent coordinate:
//!
//! `W(x, p) = (1/2π) ∫ e^{−ipv} Φ*(x − v/2) Φ(x + v/2) dv`.
//!
//! With `ξ = e^{−x}` and `ϖ = |ϖ|e^{iφ}` the transform of a number-state
//! expansion reduces to
//!
//! `W = (2/π)(κ/πρ²) ξ^ℓ Σ_{j,j'} A_j A*_{j'} ξ^{j+j'} e^{−iνφ} K_ν(|ϖ|ξ)`,
//! `ν = j − j' + 2ip`,
//!
//! where `A_j = Σ_k a_k b_{kj}` collects the level amplitudes `a_k` against the
//! monomial coefficients `b_{kj}` of `L_k^ℓ`.

use std::cell::Cell;
use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::dynamics::Frame;
use crate::error::{domain, Error, Result};
use crate::quad::{integrate_breaks, QuadOptions};
use crate::specfun::{bessel_k, laguerre_coefficients, log_gamma_unchecked};
use crate::states::{build_coefficients, state_wavefunction, CoefficientVector, StateSpec};

/// Options for the series evaluation.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct WignerOptions {
    /// Permit frames with `ρ̇ ≠ 0`.
    pub allow_nonstatic: bool,
}

/// One Wigner value with its diagnostics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WignerValue {
    pub value: f64,
    /// Imaginary part left by the summation; zero in exact arithmetic.
    pub imag_residue: f64,
    /// Number levels kept.
    pub levels: usize,
    /// Probability in the discarded levels.
    pub tail_mass: f64,
}

/// Level amplitudes and their monomial expansion, reusable across points.
#[derive(Debug, Clone)]
pub struct WignerSeries {
    ell: f64,
    /// `a_k = c_k (−1)^k sqrt(k!/Γ(k+ℓ+1)) e^{iγ_k}`.
    amplitudes: Vec<Complex64>,
    /// `A_j`.
    monomials: Vec<Complex64>,
    prefactor: f64,
    varpi: Complex64,
    tail_mass: f64,
}

fn level_amplitudes(coeffs: &CoefficientVector, frame: &Frame) -> Vec<Complex64> {
    let ell = coeffs.spec.ell;
    (0..coeffs.levels())
        .map(|k| {
            let c = coeffs.coeffs[k];
            if c == Complex64::new(0.0, 0.0) {
                return c;
            }
            let kf = k as f64;
            let ln_norm = 0.5 * (log_gamma_unchecked(kf + 1.0) - log_gamma_unchecked(kf + ell + 1.0));
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            c * Complex64::from_polar(sign * ln_norm.exp(), frame.gamma(k, ell))
        })
        .collect()
}

fn check_frame(frame: &Frame, opts: WignerOptions) -> Result<()> {
    if !frame.is_static() && !opts.allow_nonstatic {
        return Err(Error::NonStaticFrame { rho_dot: frame.rho_dot });
    }
    Ok(())
}

impl WignerSeries {
    pub fn new(spec: &StateSpec, frame: &Frame, opts: WignerOptions) -> Result<Self> {
        check_frame(frame, opts)?;
        let coeffs = build_coefficients(spec, 1)?;
        Self::from_coefficients(&coeffs, frame)
    }

    pub fn from_coefficients(coeffs: &CoefficientVector, frame: &Frame) -> Result<Self> {
        let ell = coeffs.spec.ell;
        let amplitudes = level_amplitudes(coeffs, frame);
        let len = amplitudes.len();
        let mut monomials = vec![Complex64::new(0.0, 0.0); len];
        for (k, &a) in amplitudes.iter().enumerate() {
            if a == Complex64::new(0.0, 0.0) {
                continue;
            }
            let b = laguerre_coefficients(k, ell)?;
            for (j, &bj) in b.iter().enumerate() {
                monomials[j] += a * bj;
            }
        }
        Ok(Self {
            ell,
            amplitudes,
            monomials,
            prefactor: 2.0 * frame.kappa / (PI * PI * frame.rho * frame.rho),
            varpi: frame.varpi(),
            tail_mass: coeffs.tail_mass,
        })
    }

    pub fn levels(&self) -> usize {
        self.amplitudes.len()
    }

    /// `e^{−iνφ} K_ν(|ϖ|ξ)` for `ν = d + 2ip`, `d = 0..len`.
    fn kernel_cache(&self, xi: f64, p: f64, len: usize) -> Result<Vec<Complex64>> {
        let phi = self.varpi.arg();
        let arg = self.varpi.norm() * xi;
        (0..len)
            .map(|d| {
                let nu = Complex64::new(d as f64, 2.0 * p);
                let rot = (Complex64::new(0.0, -1.0) * nu * phi).exp();
                Ok(rot * bessel_k(nu, arg)?)
            })
            .collect()
    }

    /// Kernel for a signed offset `d`, using `K_{−ν} = K_ν` and `K_{ν*} = K_ν*` for real argument.
    fn kernel(cache: &[Complex64], d: isize, p: f64, phi: f64) -> Complex64 {
        if d >= 0 {
            return cache[d as usize];
        }
        let a = d.unsigned_abs();
        let i = Complex64::new(0.0, 1.0);
        // K_{|d|+2ip} recovered from the cached rotated value
        let k_pos = cache[a] * (i * Complex64::new(a as f64, 2.0 * p) * phi).exp();
        let nu = Complex64::new(d as f64, 2.0 * p);
        (-i * nu * phi).exp() * k_pos.conj()
    }

    /// Series value at exponent coordinate `x` and conjugate momentum `p`.
    pub fn evaluate(&self, x: f64, p: f64) -> Result<WignerValue> {
        if !x.is_finite() || !p.is_finite() {
            return Err(domain("wigner_series", format!("non-finite point ({x}, {p})")));
        }
        let xi = (-x).exp();
        let len = self.monomials.len();
        // S_d = Σ_{j−j'=d} A_j A*_{j'} ξ^{j+j'}
        let scaled: Vec<Complex64> = (0..len).map(|j| self.monomials[j] * xi.powi(j as i32)).collect();
        let mut sums = vec![Complex64::new(0.0, 0.0); 2 * len - 1];
        for (j, &aj) in scaled.iter().enumerate() {
            for (jp, &ajp) in scaled.iter().enumerate() {
                sums[j + len - 1 - jp] += aj * ajp.conj();
            }
        }
        let cache = self.kernel_cache(xi, p, len)?;
        let phi = self.varpi.arg();
        let mut total = Complex64::new(0.0, 0.0);
        for (idx, s) in sums.iter().enumerate() {
            let d = idx as isize - (len as isize - 1);
            total += s * Self::kernel(&cache, d, p, phi);
        }
        let scale = self.prefactor * xi.powf(self.ell);
        Ok(WignerValue {
            value: scale * total.re,
            imag_residue: scale * total.im,
            levels: len,
            tail_mass: self.tail_mass,
        })
    }

    /// The same value as [`WignerSeries::evaluate`], summed literally over
    /// `(n, n', k, k')` without regrouping. Quartic in the number of levels.
    pub fn evaluate_expanded(&self, x: f64, p: f64) -> Result<WignerValue> {
        let xi = (-x).exp();
        let len = self.amplitudes.len();
        let cache = self.kernel_cache(xi, p, len)?;
        let phi = self.varpi.arg();
        let lag: Vec<Vec<f64>> = (0..len)
            .map(|k| laguerre_coefficients(k, self.ell))
            .collect::<Result<_>>()?;
        let mut total = Complex64::new(0.0, 0.0);
        for n in 0..len {
            let an = self.amplitudes[n];
            if an == Complex64::new(0.0, 0.0) {
                continue;
            }
            for np in 0..len {
                let anp = self.amplitudes[np];
                if anp == Complex64::new(0.0, 0.0) {
                    continue;
                }
                let pair = an * anp.conj();
                for (k, &bk) in lag[n].iter().enumerate() {
                    for (kp, &bkp) in lag[np].iter().enumerate() {
                        let d = k as isize - kp as isize;
                        let kern = Self::kernel(&cache, d, p, phi);
                        total += pair * (bk * bkp * xi.powi((k + kp) as i32)) * kern;
                    }
                }
            }
        }
        let scale = self.prefactor * xi.powf(self.ell);
        Ok(WignerValue {
            value: scale * total.re,
            imag_residue: scale * total.im,
            levels: len,
            tail_mass: self.tail_mass,
        })
    }
}

/// Wigner value from the number-state series.
pub fn wigner_series(spec: &StateSpec, frame: &Frame, x: f64, p: f64, opts: WignerOptions) -> Result<WignerValue> {
    WignerSeries::new(spec, frame, opts)?.evaluate(x, p)
}

/// Cross-Wigner function of two labels: the transform of `Φ_bra*(x − v/2) Φ_ket(x + v/2)`.
///
/// Complex in general; reduces to [`wigner_series`] when both labels coincide.
pub fn wigner_cross(
    bra: &StateSpec,
    ket: &StateSpec,
    frame: &Frame,
    x: f64,
    p: f64,
    opts: WignerOptions,
) -> Result<Complex64> {
    if bra.ell != ket.ell {
        return Err(Error::IndexMismatch(bra.ell, ket.ell));
    }
    let a = WignerSeries::new(bra, frame, opts)?;
    let b = WignerSeries::new(ket, frame, opts)?;
    let xi = (-x).exp();
    let len = a.monomials.len().max(b.monomials.len());
    let cache = b.kernel_cache(xi, p, len)?;
    let phi = b.varpi.arg();
    let mut total = Complex64::new(0.0, 0.0);
    for (j, &bj) in b.monomials.iter().enumerate() {
        for (jp, &ajp) in a.monomials.iter().enumerate() {
            let d = j as isize - jp as isize;
            let kern = WignerSeries::kernel(&cache, d, p, phi);
            total += bj * ajp.conj() * xi.powi((j + jp) as i32) * kern;
        }
    }
    Ok(b.prefactor * xi.powf(b.ell) * total)
}

/// Wigner value by direct quadrature of the defining transform. Used as an oracle.
pub fn wigner_direct(spec: &StateSpec, frame: &Frame, x: f64, p: f64) -> Result<Complex64> {
    let coeffs = build_coefficients(spec, 1)?;
    wigner_direct_coefficients(&coeffs, frame, x, p)
}

pub fn wigner_direct_coefficients(coeffs: &CoefficientVector, frame: &Frame, x: f64, p: f64) -> Result<Complex64> {
    let r = coeffs.spec.z.norm();
    // Φ decays like e^{−u/2 + 2 sqrt(u|z|)} for large u = e^{−x}.
    let u_max = 200.0 + 20.0 * r + 4.0 * coeffs.spec.m as f64;
    let half = (x + u_max.ln()).max(2.0);
    let lo = -2.0 * half;
    let hi = 2.0 * half;
    let pieces = (((hi - lo) * p.abs().max(1.0)) / PI).ceil().clamp(8.0, 2000.0) as usize;
    let breaks: Vec<f64> = (0..=pieces).map(|i| lo + (hi - lo) * i as f64 / pieces as f64).collect();
    let failure = Cell::new(None);
    let phi = |y: f64| -> Complex64 {
        match state_wavefunction(coeffs, frame, (-y).exp()) {
            Ok(v) => v,
            Err(e) => {
                failure.set(Some(e));
                Complex64::new(0.0, 0.0)
            }
        }
    };
    let mut f = |v: f64| {
        let w = phi(x - 0.5 * v).conj() * phi(x + 0.5 * v);
        w * Complex64::from_polar(1.0, -p * v)
    };
    let res = integrate_breaks(&mut f, &breaks, QuadOptions::rel(1e-11).with_abs(1e-16))?;
    if let Some(e) = failure.take() {
        return Err(e);
    }
    Ok(res.value / (2.0 * PI))
}

/// `|Φ(x)|²`, the x-marginal of the distribution.
pub fn radial_density(spec: &StateSpec, frame: &Frame, x: f64) -> Result<f64> {
    let coeffs = build_coefficients(spec, 1)?;
    Ok(state_wavefunction(&coeffs, frame, (-x).exp())?.norm_sqr())
}

/// Wigner values on a tensor grid, rows indexed by `x`.
#[derive(Debug, Clone, PartialEq)]
pub struct WignerGrid {
    pub x: Vec<f64>,
    pub p: Vec<f64>,
    /// Row-major values, `values[i * p.len() + j] = W(x_i, p_j)`.
    pub values: Vec<f64>,
    /// Largest `|imag_residue|` over the grid.
    pub max_imag_residue: f64,
    pub levels: usize,
    pub tail_mass: f64,
}

impl WignerGrid {
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.p.len() + j]
    }
}

/// Evaluates the series on every `(x, p)` pair in parallel.
pub fn wigner_grid(spec: &StateSpec, frame: &Frame, x: &[f64], p: &[f64], opts: WignerOptions) -> Result<WignerGrid> {
    let series = WignerSeries::new(spec, frame, opts)?;
    let points: Vec<(f64, f64)> = x.iter().flat_map(|&xi| p.iter().map(move |&pj| (xi, pj))).collect();
    let vals = points
        .par_iter()
        .map(|&(xi, pj)| series.evaluate(xi, pj))
        .collect::<Result<Vec<_>>>()?;
    Ok(WignerGrid {
        x: x.to_vec(),
        p: p.to_vec(),
        values: vals.iter().map(|v| v.value).collect(),
        max_imag_residue: vals.iter().map(|v| v.imag_residue.abs()).fold(0.0, f64::max),
        levels: series.levels(),
        tail_mass: series.tail_mass,
    })
}
