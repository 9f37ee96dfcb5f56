//! Tables produced by the computational subcommands.

use landau_cs::dynamics::{phase, solve_ermakov, Frame, ModelProfile};
use landau_cs::measure::{WeightFunction, WeightMethod};
use landau_cs::states::StateSpec;
use landau_cs::statistics::{mean_photon_number, pnd, statistics};
use landau_cs::wigner::{WignerOptions, WignerSeries};
use landau_cs::Error;
use num_complex::Complex64;
use rayon::prelude::*;

use crate::config::{Grid, RunConfig};
use crate::table::Table;
use crate::CliError;

fn spec(cfg: &RunConfig, z: Complex64) -> Result<StateSpec, CliError> {
    Ok(StateSpec::new(z, cfg.ell, cfg.m)?)
}

/// One row of photon statistics; `g2` and `q` are NaN where ⟨N⟩ vanishes.
pub fn stats_row(s: &StateSpec) -> Result<[f64; 6], Error> {
    match statistics(s) {
        Ok(st) => Ok([s.z.norm(), st.mean_n, st.mean_n2, st.g2, st.q_mandel, st.truncation_error]),
        Err(Error::UndefinedPoint { .. }) => {
            let (mean, mean2) = mean_photon_number(s)?;
            Ok([s.z.norm(), mean, mean2, f64::NAN, f64::NAN, 0.0])
        }
        Err(e) => Err(e),
    }
}

/// `⟨N⟩`, `⟨N²⟩`, `g²`, `Q` at the configured label, or along `|z|` on the grid at the label's phase.
pub fn stats(cfg: &RunConfig) -> Result<Table, CliError> {
    let mut table = Table::new(["abs_z", "mean_n", "mean_n2", "g2", "q", "truncation_error"]);
    match cfg.grid {
        None => {
            let st = statistics(&spec(cfg, cfg.z)?)?;
            table.push(vec![cfg.z.norm(), st.mean_n, st.mean_n2, st.g2, st.q_mandel, st.truncation_error]);
        }
        Some(grid) => {
            let arg = cfg.z.arg();
            let rows = grid
                .points()
                .par_iter()
                .map(|&r| {
                    let s = StateSpec::new(Complex64::from_polar(r, arg), cfg.ell, cfg.m)?;
                    stats_row(&s)
                })
                .collect::<Result<Vec<_>, Error>>()?;
            for row in rows {
                table.push(row.to_vec());
            }
        }
    }
    Ok(table)
}

/// Photon-number distribution over absolute levels `0..`, trimmed after the last value above `tol`.
pub fn pnd_table(cfg: &RunConfig) -> Result<Table, CliError> {
    let s = spec(cfg, cfg.z)?;
    let dist = pnd(&s, cfg.nmax.map(|n| n.saturating_sub(cfg.m)))?;
    let top = dist.offset + dist.probabilities.len();
    let last = (0..top).rev().find(|&k| dist.level(k) >= cfg.tol).unwrap_or(dist.offset);
    let last = match cfg.nmax {
        Some(n) => n.min(top - 1),
        None => last,
    };
    let mut table = Table::new(["n", "p"]);
    for k in 0..=last {
        table.push(vec![k as f64, dist.level(k)]);
    }
    Ok(table)
}

/// Weight function of the resolution of identity along `r`.
pub fn weight(cfg: &RunConfig) -> Result<Table, CliError> {
    let method = if cfg.m == 0 { WeightMethod::BesselProduct } else { WeightMethod::MellinInversion };
    let w = WeightFunction::new(cfg.ell, cfg.m, method)?;
    let grid = cfg.grid.unwrap_or(Grid::new(0.05, 5.0, 100));
    let values = grid
        .points()
        .par_iter()
        .map(|&r| Ok((r, w.evaluate(r)?)))
        .collect::<Result<Vec<_>, Error>>()?;
    let mut table = Table::new(["r", "weight"]);
    for (r, v) in values {
        table.push(vec![r, v]);
    }
    Ok(table)
}

/// Envelope frame at `cfg.time`, starting from the profile's stationary width unless overridden.
pub fn frame(cfg: &RunConfig) -> Result<Frame, CliError> {
    let Some(profile) = &cfg.profile else {
        return Ok(Frame::stationary(1.0, 1.0, 1.0));
    };
    if cfg.time.is_nan() || cfg.time < 0.0 {
        return Err(CliError::Config(format!("time must be >= 0, got {}", cfg.time)));
    }
    let rho0 = cfg.rho0.unwrap_or_else(|| profile.stationary_rho(0.0));
    if cfg.time == 0.0 {
        return Ok(Frame {
            rho: rho0,
            rho_dot: cfg.rho_dot0,
            mass: profile.mass_at(0.0),
            kappa: profile.kappa,
            angle: 0.0,
            time_integral: 0.0,
            cyclotron_integral: 0.0,
            field_phase: 0.0,
        });
    }
    let env = solve_ermakov(profile, rho0, cfg.rho_dot0, &[0.0, cfg.time])?;
    Ok(Frame::at(profile, &env, cfg.time, 0.0)?)
}

/// Wigner function on the `x` grid (exponent coordinate) times the `p` grid.
pub fn wigner(cfg: &RunConfig) -> Result<Table, CliError> {
    let f = frame(cfg)?;
    let series = WignerSeries::new(
        &spec(cfg, cfg.z)?,
        &f,
        WignerOptions {
            allow_nonstatic: cfg.experimental,
        },
    )?;
    let xs = cfg.grid.unwrap_or(Grid::new(-2.0, 3.0, 26)).points();
    let ps = cfg.pgrid.unwrap_or(Grid::new(-3.0, 3.0, 25)).points();
    let points: Vec<(f64, f64)> = xs.iter().flat_map(|&x| ps.iter().map(move |&p| (x, p))).collect();
    let values = points
        .par_iter()
        .map(|&(x, p)| series.evaluate(x, p))
        .collect::<Result<Vec<_>, Error>>()?;
    let mut table = Table::new(["x", "p", "w", "imag_residue"]);
    for ((x, p), v) in points.iter().zip(values) {
        table.push(vec![*x, *p, v.value, v.imag_residue]);
    }
    Ok(table)
}

/// Envelope, residual and ground-level phase on the time grid.
pub fn ermakov(cfg: &RunConfig) -> Result<Table, CliError> {
    let default_profile;
    let profile: &ModelProfile = match &cfg.profile {
        Some(p) => p,
        None => {
            default_profile = crate::config::builtin_profile("constant").expect("built-in");
            &default_profile
        }
    };
    let grid = cfg.grid.unwrap_or(Grid::new(0.0, 10.0, 101));
    if grid.n < 2 {
        return Err(CliError::Config("ermakov needs a time grid with at least two points".into()));
    }
    let times = grid.points();
    let rho0 = cfg.rho0.unwrap_or_else(|| profile.stationary_rho(times[0]));
    let env = solve_ermakov(profile, rho0, cfg.rho_dot0, &times)?;
    let mut table = Table::new(["t", "rho", "rho_dot", "residual", "gamma_0"]);
    for (i, &t) in times.iter().enumerate() {
        let g = phase(profile, &env, 0, cfg.ell, t)?;
        table.push(vec![t, env.rho[i], env.rho_dot[i], env.residual[i], g.gamma]);
    }
    Ok(table)
}
