//! Dormand-Prince 5(4) integration of the modified Ermakov-Pinney equation.

use crate::error::{Error, Result};

use super::profile::ModelProfile;

/// Steps that would bring the envelope below this value are rejected.
pub const RHO_FLOOR: f64 = 1e-12;

const REL_TOL: f64 = 1e-12;
const ABS_TOL: f64 = 1e-14;
/// Acceptance threshold for the residual of the continuous extension at mid-step.
pub const DENSE_RESIDUAL_TOL: f64 = 2e-9;
const MAX_STEPS: usize = 5_000_000;

const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;
const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const A71: f64 = 35.0 / 384.0;
const A73: f64 = 500.0 / 1113.0;
const A74: f64 = 125.0 / 192.0;
const A75: f64 = -2187.0 / 6784.0;
const A76: f64 = 11.0 / 84.0;
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;
const D1: f64 = -12715105075.0 / 11282082432.0;
const D3: f64 = 87487479700.0 / 32700410799.0;
const D4: f64 = -10690763975.0 / 1880347072.0;
const D5: f64 = 701980252875.0 / 199316789632.0;
const D6: f64 = -1453857185.0 / 822651844.0;
const D7: f64 = 69997945.0 / 29380423.0;

type Y = [f64; 2];

/// Right-hand side for `y = (ρ, ρ̇)`.
pub(crate) fn ermakov_rhs(profile: &ModelProfile, t: f64, y: Y) -> Y {
    let m = profile.mass_at(t);
    let w = profile.big_omega(t);
    let k = profile.kappa;
    let (rho, v) = (y[0], y[1]);
    [v, -profile.mass_rate(t) / m * v - w * w * rho + k * k / (m * m * rho.powi(3))]
}

fn axpy(y: Y, terms: &[(f64, &Y)], h: f64) -> Y {
    let mut out = y;
    for (c, k) in terms {
        out[0] += h * c * k[0];
        out[1] += h * c * k[1];
    }
    out
}

/// Continuous extension of one accepted step.
#[derive(Debug, Clone)]
pub(crate) struct DenseStep {
    pub t0: f64,
    pub h: f64,
    r: [Y; 5],
}

impl DenseStep {
    fn theta(&self, t: f64) -> f64 {
        (t - self.t0) / self.h
    }

    pub fn eval(&self, t: f64) -> Y {
        let th = self.theta(t);
        let th1 = 1.0 - th;
        let r = &self.r;
        let f = |i: usize| r[0][i] + th * (r[1][i] + th1 * (r[2][i] + th * (r[3][i] + th1 * r[4][i])));
        [f(0), f(1)]
    }

    pub fn derivative(&self, t: f64) -> Y {
        let th = self.theta(t);
        let r = &self.r;
        let f = |i: usize| {
            r[1][i]
                + (1.0 - 2.0 * th) * r[2][i]
                + th * (2.0 - 3.0 * th) * r[3][i]
                + 2.0 * th * (1.0 - th) * (1.0 - 2.0 * th) * r[4][i]
        };
        [f(0) / self.h, f(1) / self.h]
    }
}

pub(crate) fn integrate(profile: &ModelProfile, y0: Y, t0: f64, t1: f64) -> Result<Vec<DenseStep>> {
    let mut steps = Vec::new();
    if t1 == t0 {
        return Ok(steps);
    }
    let span = t1 - t0;
    let mut t = t0;
    let mut y = y0;
    let mut k1 = ermakov_rhs(profile, t, y);
    let scale = (y[0].abs() + y[1].abs()).max(ABS_TOL);
    let rate = (k1[0].abs() + k1[1].abs()).max(1e-300);
    let mut h = (0.01 * scale / rate).min(span).max(span * 1e-10);
    let mut factor_old: f64 = 1e-4;
    let mut rejected_last = false;
    for _ in 0..MAX_STEPS {
        if t >= t1 {
            return Ok(steps);
        }
        if t + h > t1 {
            h = t1 - t;
        }
        if h <= 1e-14 * t.abs().max(1.0) {
            return Err(Error::Stiffness { t, h });
        }
        let stage = |ys: Y, c: f64| -> Option<Y> {
            if ys[0] <= RHO_FLOOR || !ys[0].is_finite() {
                None
            } else {
                Some(ermakov_rhs(profile, t + c * h, ys))
            }
        };
        let trial = (|| {
            let k2 = stage(axpy(y, &[(A21, &k1)], h), C2)?;
            let k3 = stage(axpy(y, &[(A31, &k1), (A32, &k2)], h), C3)?;
            let k4 = stage(axpy(y, &[(A41, &k1), (A42, &k2), (A43, &k3)], h), C4)?;
            let k5 = stage(axpy(y, &[(A51, &k1), (A52, &k2), (A53, &k3), (A54, &k4)], h), C5)?;
            let k6 = stage(
                axpy(y, &[(A61, &k1), (A62, &k2), (A63, &k3), (A64, &k4), (A65, &k5)], h),
                1.0,
            )?;
            let y1 = axpy(y, &[(A71, &k1), (A73, &k3), (A74, &k4), (A75, &k5), (A76, &k6)], h);
            let k7 = stage(y1, 1.0)?;
            Some((k2, k3, k4, k5, k6, k7, y1))
        })();
        let Some((_k2, k3, k4, k5, k6, k7, y1)) = trial else {
            if h <= 1e-12 * t.abs().max(1.0) {
                return Err(Error::Singularity { t, rho: y[0] });
            }
            h *= 0.25;
            rejected_last = true;
            continue;
        };
        let mut err = 0.0;
        for i in 0..2 {
            let e = h * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] + E7 * k7[i]);
            let sc = ABS_TOL + REL_TOL * y[i].abs().max(y1[i].abs());
            err += (e / sc).powi(2);
        }
        let err = (err / 2.0).sqrt();
        if !err.is_finite() {
            h *= 0.25;
            rejected_last = true;
            continue;
        }
        // Lund-stabilised step-size controller.
        let fac11 = err.powf(0.17);
        let mut fac = fac11 / factor_old.powf(0.04) / 0.9;
        fac = fac.clamp(0.1, 5.0);
        let h_new = h / fac;
        if err <= 1.0 {
            factor_old = err.max(1e-4);
            let mut r = [[0.0; 2]; 5];
            for i in 0..2 {
                let ydiff = y1[i] - y[i];
                let bspl = h * k1[i] - ydiff;
                r[0][i] = y[i];
                r[1][i] = ydiff;
                r[2][i] = bspl;
                r[3][i] = ydiff - h * k7[i] - bspl;
                r[4][i] = h * (D1 * k1[i] + D3 * k3[i] + D4 * k4[i] + D5 * k5[i] + D6 * k6[i] + D7 * k7[i]);
            }
            let step = DenseStep { t0: t, h, r };
            // The dense output must itself satisfy the equation, not only the step endpoints.
            let tm = t + 0.5 * h;
            let mid = ermakov_rhs(profile, tm, step.eval(tm));
            if (step.derivative(tm)[1] - mid[1]).abs() > DENSE_RESIDUAL_TOL {
                h *= 0.7;
                rejected_last = true;
                continue;
            }
            steps.push(step);
            t += h;
            y = y1;
            k1 = k7;
            h = if rejected_last { h_new.min(h) } else { h_new };
            rejected_last = false;
        } else {
            h /= (fac11 / 0.9).min(10.0);
            rejected_last = true;
        }
    }
    Err(Error::Stiffness { t, h })
}
