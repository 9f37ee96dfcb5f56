//! Envelope dynamics, Lewis-Riesenfeld phases and number-basis wavefunctions of the
//! time-dependent Landau problem.

mod ermakov;
mod profile;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quad::{integrate_breaks, QuadOptions};
use crate::specfun::{laguerre, log_gamma};

use ermakov::DenseStep;
pub use ermakov::RHO_FLOOR;
pub use profile::{FieldLaw, FrequencyLaw, MassLaw, ModelProfile};

const PHASE_OPTS: QuadOptions = QuadOptions {
    abs_tol: 1e-13,
    rel_tol: 1e-13,
    max_intervals: 4000,
};

/// Solved envelope `ρ(t)` with dense output between grid samples.
#[derive(Debug, Clone)]
pub struct EnvelopeSolution {
    pub grid: Vec<f64>,
    pub rho: Vec<f64>,
    pub rho_dot: Vec<f64>,
    /// `|ρ̈ + (Ṁ/M)ρ̇ + Ω²ρ − κ²/(M²ρ³)|` at each grid sample.
    pub residual: Vec<f64>,
    steps: Vec<DenseStep>,
    /// Cumulative `[∫dt/(Mρ²), ∫ω_c dt, ∫E²/(Mω) dt]` from `grid[0]` to each sample.
    integrals: Vec<[f64; 3]>,
    /// Largest residual found at grid samples and at the midpoint of every accepted step.
    max_residual: f64,
}

/// Lewis-Riesenfeld phase `γ_n^ℓ(t)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseValue {
    pub n: usize,
    pub ell: f64,
    pub gamma: f64,
}

/// Integrates the modified Ermakov-Pinney equation from `grid[0]` with `ρ(grid[0]) = rho0`.
///
/// Phase integrals are measured from `grid[0]`.
pub fn solve_ermakov(profile: &ModelProfile, rho0: f64, rho_dot0: f64, grid: &[f64]) -> Result<EnvelopeSolution> {
    if !(rho0 > 0.0) || !rho0.is_finite() || !rho_dot0.is_finite() {
        return Err(crate::error::domain("solve_ermakov", format!("need rho0 > 0, got {rho0}")));
    }
    if grid.is_empty() || grid.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(crate::error::domain("solve_ermakov", "grid must be non-empty and strictly ascending"));
    }
    let t0 = grid[0];
    let t1 = *grid.last().unwrap();
    let steps = ermakov::integrate(profile, [rho0, rho_dot0], t0, t1)?;
    let mut env = EnvelopeSolution {
        grid: grid.to_vec(),
        rho: Vec::with_capacity(grid.len()),
        rho_dot: Vec::with_capacity(grid.len()),
        residual: Vec::with_capacity(grid.len()),
        steps,
        integrals: Vec::with_capacity(grid.len()),
        max_residual: 0.0,
    };
    for &t in grid {
        let (y, res) = if env.steps.is_empty() {
            let y = [rho0, rho_dot0];
            let f = ermakov::ermakov_rhs(profile, t, y);
            (y, f[1].abs())
        } else {
            let step = env.step_for(t);
            (step.eval(t), env.residual_in(profile, step, t))
        };
        env.rho.push(y[0]);
        env.rho_dot.push(y[1]);
        env.residual.push(res);
        env.max_residual = env.max_residual.max(res);
    }
    for step in &env.steps {
        let tm = step.t0 + 0.5 * step.h;
        env.max_residual = env.max_residual.max(env.residual_in(profile, step, tm));
    }
    let mut acc = [0.0; 3];
    env.integrals.push(acc);
    for w in grid.windows(2) {
        let seg = env.segment_integrals(profile, w[0], w[1])?;
        for i in 0..3 {
            acc[i] += seg[i];
        }
        env.integrals.push(acc);
    }
    Ok(env)
}

impl EnvelopeSolution {
    pub fn start(&self) -> f64 {
        self.grid[0]
    }

    pub fn end(&self) -> f64 {
        *self.grid.last().unwrap()
    }

    pub fn max_residual(&self) -> f64 {
        self.max_residual
    }

    pub fn accepted_steps(&self) -> usize {
        self.steps.len()
    }

    fn check_window(&self, t: f64) -> Result<()> {
        let (start, end) = (self.start(), self.end());
        if t < start || t > end || t.is_nan() {
            return Err(Error::OutsideWindow { t, start, end });
        }
        Ok(())
    }

    fn step_for(&self, t: f64) -> &DenseStep {
        let idx = self.steps.partition_point(|s| s.t0 <= t);
        &self.steps[idx.saturating_sub(1)]
    }

    fn residual_in(&self, profile: &ModelProfile, step: &DenseStep, t: f64) -> f64 {
        let y = step.eval(t);
        let dy = step.derivative(t);
        let f = ermakov::ermakov_rhs(profile, t, y);
        (dy[1] - f[1]).abs()
    }

    /// `(ρ, ρ̇)` at any time inside the solved window.
    pub fn state_at(&self, t: f64) -> Result<(f64, f64)> {
        self.check_window(t)?;
        if self.steps.is_empty() {
            return Ok((self.rho[0], self.rho_dot[0]));
        }
        let y = self.step_for(t).eval(t);
        Ok((y[0], y[1]))
    }

    fn segment_integrals(&self, profile: &ModelProfile, a: f64, b: f64) -> Result<[f64; 3]> {
        if a == b {
            return Ok([0.0; 3]);
        }
        let mut breaks = vec![a];
        breaks.extend(profile.efield.breaks().iter().copied().filter(|&x| x > a && x < b));
        breaks.push(b);
        let mut inv = |t: f64| {
            let rho = self.state_at(t).map(|s| s.0).unwrap_or(f64::NAN);
            1.0 / (profile.mass_at(t) * rho * rho)
        };
        let mut cyc = |t: f64| profile.cyclotron(t);
        let mut field = |t: f64| {
            let e = profile.efield_at(t);
            e * e / (profile.mass_at(t) * profile.omega_at(t))
        };
        Ok([
            integrate_breaks(&mut inv, &breaks, PHASE_OPTS)?.value,
            integrate_breaks(&mut cyc, &breaks, PHASE_OPTS)?.value,
            integrate_breaks(&mut field, &breaks, PHASE_OPTS)?.value,
        ])
    }

    /// `[∫dt/(Mρ²), ∫ω_c dt, ∫E²/(Mω) dt]` from `grid[0]` to `t`.
    pub fn phase_integrals(&self, profile: &ModelProfile, t: f64) -> Result<[f64; 3]> {
        self.check_window(t)?;
        let i = self.grid.partition_point(|&g| g <= t).saturating_sub(1);
        let base = self.integrals[i];
        let seg = self.segment_integrals(profile, self.grid[i], t)?;
        Ok([base[0] + seg[0], base[1] + seg[1], base[2] + seg[2]])
    }
}

/// Phase `γ_n^ℓ(t)` accumulated since the start of the envelope window.
pub fn phase(profile: &ModelProfile, envelope: &EnvelopeSolution, n: usize, ell: f64, t: f64) -> Result<PhaseValue> {
    let frame = Frame::at(profile, envelope, t, 0.0)?;
    Ok(PhaseValue {
        n,
        ell,
        gamma: frame.gamma(n, ell),
    })
}

/// `κ(2n+ℓ+1)`, the eigenvalue of the invariant.
pub fn invariant_eigenvalue(profile: &ModelProfile, n: usize, ell: f64) -> f64 {
    profile.kappa * (2.0 * n as f64 + ell + 1.0)
}

/// Expectation value of the Hamiltonian in the number state `(n, ℓ)`.
pub fn hamiltonian_expectation(
    profile: &ModelProfile,
    envelope: &EnvelopeSolution,
    n: usize,
    ell: f64,
    t: f64,
) -> Result<f64> {
    let (rho, rho_dot) = envelope.state_at(t)?;
    let m = profile.mass_at(t);
    let k = profile.kappa;
    let w = profile.big_omega(t);
    let e = profile.efield_at(t);
    let level = 2.0 * n as f64 + ell + 1.0;
    Ok((m * rho_dot * rho_dot + k * k / (m * rho * rho) + m * w * w * rho * rho) * level / (2.0 * k)
        - 0.5 * ell * profile.cyclotron(t)
        - profile.charge * profile.charge * e * e / (2.0 * m * profile.omega_at(t)))
}

/// Number-basis solution `ψ_n^ℓ(r, θ, t)` of the Schrödinger equation.
pub fn number_wavefunction(
    profile: &ModelProfile,
    envelope: &EnvelopeSolution,
    n: usize,
    ell: f64,
    r: f64,
    theta: f64,
    t: f64,
) -> Result<Complex64> {
    if !(r >= 0.0) || !(ell >= 0.0) {
        return Err(crate::error::domain("number_wavefunction", "need r >= 0 and ell >= 0"));
    }
    let frame = Frame::at(profile, envelope, t, theta)?;
    let u = frame.kappa * r * r / (frame.rho * frame.rho);
    frame.number_state(n, ell, u)
}

/// Snapshot of the envelope quantities that the coherent-state constructions need at one instant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Frame {
    pub rho: f64,
    pub rho_dot: f64,
    pub mass: f64,
    pub kappa: f64,
    /// Polar angle `θ` of the evaluation point.
    pub angle: f64,
    /// `∫dt/(Mρ²)` since the reference time.
    pub time_integral: f64,
    /// `∫ω_c dt` since the reference time.
    pub cyclotron_integral: f64,
    /// `(q²/2)∫E²/(Mω) dt` since the reference time.
    pub field_phase: f64,
}

impl Frame {
    /// Stationary frame at the reference time: `ρ = sqrt(κ/(MΩ))`, `ρ̇ = 0`, all phases zero.
    pub fn stationary(kappa: f64, mass: f64, big_omega: f64) -> Self {
        Self {
            rho: (kappa / (mass * big_omega)).sqrt(),
            rho_dot: 0.0,
            mass,
            kappa,
            angle: 0.0,
            time_integral: 0.0,
            cyclotron_integral: 0.0,
            field_phase: 0.0,
        }
    }

    pub fn at(profile: &ModelProfile, envelope: &EnvelopeSolution, t: f64, angle: f64) -> Result<Self> {
        let (rho, rho_dot) = envelope.state_at(t)?;
        let [a, b, c] = envelope.phase_integrals(profile, t)?;
        Ok(Self {
            rho,
            rho_dot,
            mass: profile.mass_at(t),
            kappa: profile.kappa,
            angle,
            time_integral: a,
            cyclotron_integral: b,
            field_phase: 0.5 * profile.charge * profile.charge * c,
        })
    }

    pub fn with_angle(mut self, angle: f64) -> Self {
        self.angle = angle;
        self
    }

    /// `ϖ = 1 − iMρρ̇/κ`.
    pub fn varpi(&self) -> Complex64 {
        Complex64::new(1.0, -self.mass * self.rho * self.rho_dot / self.kappa)
    }

    pub fn is_static(&self) -> bool {
        self.rho_dot == 0.0
    }

    /// `γ_n^ℓ`; linear in `n` with slope [`Frame::gamma_step`].
    pub fn gamma(&self, n: usize, ell: f64) -> f64 {
        -0.5 * self.kappa * (2.0 * n as f64 + ell + 1.0) * self.time_integral - 0.5 * ell * self.cyclotron_integral
            + self.field_phase
    }

    pub fn gamma_step(&self) -> f64 {
        -self.kappa * self.time_integral
    }

    /// `sqrt(κ/(πρ²))·e^{iℓθ}`, the level-independent part of the normalisation factor.
    pub fn angular_factor(&self, ell: f64) -> Complex64 {
        let amp = (self.kappa / (std::f64::consts::PI * self.rho * self.rho)).sqrt();
        Complex64::from_polar(amp, ell * self.angle)
    }

    /// `ψ_n^ℓ` in the scaled radial variable `u = κr²/ρ²`, including `(−1)^n` and the phase.
    pub fn number_state(&self, n: usize, ell: f64, u: f64) -> Result<Complex64> {
        let ln_norm = 0.5 * (log_gamma(n as f64 + 1.0)? - log_gamma(n as f64 + ell + 1.0)?);
        let lag = laguerre(n, ell, u)?;
        let varpi = self.varpi();
        let power = if ell == 0.0 { 1.0 } else { u.powf(0.5 * ell) };
        let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
        let gauss = (-0.5 * varpi * u).exp();
        Ok(self.angular_factor(ell)
            * gauss
            * Complex64::from_polar(1.0, self.gamma(n, ell))
            * (sign * ln_norm.exp() * power * lag))
    }
}
