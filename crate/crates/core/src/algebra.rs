//! Truncated number-basis realisation of the SU(1,1) generators `K₊`, `K₋`, `K₀`.

use std::collections::BTreeMap;

use num_complex::Complex64;
use twofloat::TwoFloat;

use crate::specfun::log_gamma_unchecked;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LadderKind {
    /// `K₊|n⟩ = sqrt((n+1)(n+ℓ+1)) |n+1⟩`
    Raise,
    /// `K₋|n⟩ = sqrt(n(n+ℓ)) |n−1⟩`
    Lower,
    /// `K₀|n⟩ = (2n+ℓ+1)/2 |n⟩`
    Diag,
}

/// One generator truncated to levels `0..dim`, stored as its single non-zero band.
#[derive(Debug, Clone, PartialEq)]
pub struct LadderMatrix {
    pub kind: LadderKind,
    pub ell: f64,
    pub dim: usize,
    /// `band[n]` is the coefficient acting on level `n` (`Raise`, `Diag`) or on level `n+1` (`Lower`).
    pub band: Vec<f64>,
}

pub fn ladder_matrix(kind: LadderKind, ell: f64, dim: usize) -> LadderMatrix {
    assert!(dim >= 2, "ladder_matrix needs dim >= 2");
    let band = match kind {
        LadderKind::Raise => (0..dim - 1).map(|n| raise_coefficient(n, ell)).collect(),
        LadderKind::Lower => (1..dim).map(|n| lower_coefficient(n, ell)).collect(),
        LadderKind::Diag => (0..dim).map(|n| 0.5 * (2.0 * n as f64 + ell + 1.0)).collect(),
    };
    LadderMatrix { kind, ell, dim, band }
}

fn raise_coefficient(n: usize, ell: f64) -> f64 {
    let n = n as f64;
    ((n + 1.0) * (n + ell + 1.0)).sqrt()
}

fn lower_coefficient(n: usize, ell: f64) -> f64 {
    let n = n as f64;
    (n * (n + ell)).sqrt()
}

/// `(ℓ+1)(ℓ−1)/4`.
pub fn casimir_value(ell: f64) -> f64 {
    0.25 * (ell + 1.0) * (ell - 1.0)
}

/// `ln` of the coefficient in `(K₊)^m |n⟩ = c |n+m⟩`.
pub fn ln_raise_power_coefficient(n: usize, ell: f64, m: usize) -> f64 {
    let (n, m) = (n as f64, m as f64);
    0.5 * (log_gamma_unchecked(n + m + 1.0) + log_gamma_unchecked(n + ell + m + 1.0)
        - log_gamma_unchecked(n + 1.0)
        - log_gamma_unchecked(n + ell + 1.0))
}

/// `sqrt(Γ(n+m+1)Γ(n+ℓ+m+1) / (Γ(n+1)Γ(n+ℓ+1)))`.
pub fn raise_power_coefficient(n: usize, ell: f64, m: usize) -> f64 {
    if m == 0 {
        1.0
    } else {
        ln_raise_power_coefficient(n, ell, m).exp()
    }
}

impl LadderMatrix {
    pub fn offset(&self) -> isize {
        match self.kind {
            LadderKind::Raise => -1,
            LadderKind::Lower => 1,
            LadderKind::Diag => 0,
        }
    }

    /// Matrix-vector product; the result has the same length as `v`, truncated to `dim`.
    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        let len = v.len().min(self.dim);
        let mut out = vec![Complex64::new(0.0, 0.0); len];
        match self.kind {
            LadderKind::Raise => {
                for n in 0..len.saturating_sub(1) {
                    out[n + 1] = v[n] * self.band[n];
                }
            }
            LadderKind::Lower => {
                for n in 0..len.saturating_sub(1) {
                    out[n] = v[n + 1] * self.band[n];
                }
            }
            LadderKind::Diag => {
                for n in 0..len {
                    out[n] = v[n] * self.band[n];
                }
            }
        }
        out
    }

    /// Band form in double-double precision, with entries recomputed from their definitions.
    pub fn to_band(&self) -> BandMatrix {
        let ell = TwoFloat::from(self.ell);
        let entries: Vec<TwoFloat> = match self.kind {
            LadderKind::Raise => (0..self.dim - 1)
                .map(|n| (TwoFloat::from(n as f64 + 1.0) * (ell + (n as f64 + 1.0))).sqrt())
                .collect(),
            LadderKind::Lower => (1..self.dim)
                .map(|n| (TwoFloat::from(n as f64) * (ell + n as f64)).sqrt())
                .collect(),
            LadderKind::Diag => (0..self.dim)
                .map(|n| (ell + (2.0 * n as f64 + 1.0)) * 0.5)
                .collect(),
        };
        let mut diagonals = BTreeMap::new();
        diagonals.insert(self.offset(), entries);
        BandMatrix { dim: self.dim, diagonals }
    }
}

/// Sparse banded matrix in double-double arithmetic; diagonal `k` holds entries `(i, i+k)`
/// indexed by `min(i, i+k)`.
#[derive(Debug, Clone, PartialEq)]
pub struct BandMatrix {
    pub dim: usize,
    diagonals: BTreeMap<isize, Vec<TwoFloat>>,
}

impl BandMatrix {
    pub fn identity(dim: usize) -> Self {
        Self::from_diagonal(vec![1.0; dim])
    }

    pub fn from_diagonal(d: Vec<f64>) -> Self {
        let mut diagonals = BTreeMap::new();
        let dim = d.len();
        diagonals.insert(0, d.into_iter().map(TwoFloat::from).collect());
        Self { dim, diagonals }
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        let k = j as isize - i as isize;
        self.diagonals.get(&k).map_or(0.0, |d| f64::from(d[i.min(j)]))
    }

    fn diag_len(&self, k: isize) -> usize {
        self.dim - k.unsigned_abs()
    }

    pub fn mul(&self, other: &BandMatrix) -> BandMatrix {
        assert_eq!(self.dim, other.dim);
        let mut diagonals: BTreeMap<isize, Vec<TwoFloat>> = BTreeMap::new();
        for (&ka, da) in &self.diagonals {
            for (&kb, db) in &other.diagonals {
                let k = ka + kb;
                if k.unsigned_abs() >= self.dim {
                    continue;
                }
                let len = self.diag_len(k);
                let target = diagonals.entry(k).or_insert_with(|| vec![TwoFloat::from(0.0); len]);
                for i in 0..self.dim {
                    let mid = i as isize + ka;
                    let j = mid + kb;
                    if mid < 0 || j < 0 || mid >= self.dim as isize || j >= self.dim as isize {
                        continue;
                    }
                    let (mid, j) = (mid as usize, j as usize);
                    target[i.min(j)] += da[i.min(mid)] * db[mid.min(j)];
                }
            }
        }
        BandMatrix { dim: self.dim, diagonals }
    }

    pub fn scale(&self, s: f64) -> BandMatrix {
        let diagonals = self
            .diagonals
            .iter()
            .map(|(&k, d)| (k, d.iter().map(|&x| x * s).collect()))
            .collect();
        BandMatrix { dim: self.dim, diagonals }
    }

    pub fn add(&self, other: &BandMatrix) -> BandMatrix {
        assert_eq!(self.dim, other.dim);
        let mut diagonals = self.diagonals.clone();
        for (&k, d) in &other.diagonals {
            let target = diagonals.entry(k).or_insert_with(|| vec![TwoFloat::from(0.0); d.len()]);
            for (t, &x) in target.iter_mut().zip(d) {
                *t += x;
            }
        }
        BandMatrix { dim: self.dim, diagonals }
    }

    pub fn sub(&self, other: &BandMatrix) -> BandMatrix {
        self.add(&other.scale(-1.0))
    }

    pub fn commutator(&self, other: &BandMatrix) -> BandMatrix {
        self.mul(other).sub(&other.mul(self))
    }

    /// Largest `|entry|` over rows and columns `< limit`.
    pub fn max_abs_within(&self, limit: usize) -> f64 {
        let mut worst: f64 = 0.0;
        for (&k, d) in &self.diagonals {
            for (idx, x) in d.iter().enumerate() {
                let (i, j) = if k >= 0 { (idx, idx + k as usize) } else { (idx + k.unsigned_abs(), idx) };
                if i < limit && j < limit {
                    worst = worst.max(f64::from(*x).abs());
                }
            }
        }
        worst
    }
}

/// `K₀² − (K₊K₋ + K₋K₊)/2` on the truncated space.
pub fn casimir_matrix(ell: f64, dim: usize) -> BandMatrix {
    let kp = ladder_matrix(LadderKind::Raise, ell, dim).to_band();
    let km = ladder_matrix(LadderKind::Lower, ell, dim).to_band();
    let k0 = ladder_matrix(LadderKind::Diag, ell, dim).to_band();
    k0.mul(&k0).sub(&kp.mul(&km).add(&km.mul(&kp)).scale(0.5))
}

/// `(ℓ+1)(ℓ−1)/4·I` in double-double precision.
pub fn casimir_identity(ell: f64, dim: usize) -> BandMatrix {
    let ell = TwoFloat::from(ell);
    let value = (ell + 1.0) * (ell - 1.0) * 0.25;
    let mut diagonals = BTreeMap::new();
    diagonals.insert(0, vec![value; dim]);
    BandMatrix { dim, diagonals }
}
