//! Datasets behind the published figures, one table per figure.

use std::path::Path;

use landau_cs::measure::{bg_weight, WeightFunction, WeightMethod};
use landau_cs::states::StateSpec;
use landau_cs::statistics::pnd;
use landau_cs::Error;
use num_complex::Complex64;
use rayon::prelude::*;

use crate::commands::stats_row;
use crate::config::Grid;
use crate::table::{Format, Table};
use crate::CliError;

pub const FIGURES: [&str; 12] = ["f1", "f2", "f3", "f4", "f5", "f6", "f7", "f8", "f9", "f10", "f11", "f12"];

pub const F1_ELLS: [f64; 4] = [0.5, 1.0, 1.5, 2.0];
pub const F6_ELLS: [f64; 4] = [0.5, 1.5, 2.5, 3.5];
pub const F7_MS: [usize; 4] = [0, 1, 2, 3];
pub const F10_MS: [usize; 5] = [0, 1, 2, 3, 4];
pub const F12_MS: [usize; 4] = [1, 2, 3, 4];

fn label(prefix: &str, v: f64) -> String {
    format!("{prefix}{v}")
}

/// Evaluates `f` on every `(row, column)` pair in parallel and lays the results out row by row.
fn sweep<F>(xname: &str, xs: &[f64], names: Vec<String>, cols: usize, f: F) -> Result<Table, CliError>
where
    F: Fn(f64, usize) -> Result<f64, Error> + Sync,
{
    let cells: Vec<(usize, usize)> = (0..xs.len()).flat_map(|i| (0..cols).map(move |j| (i, j))).collect();
    let values = cells
        .par_iter()
        .map(|&(i, j)| f(xs[i], j))
        .collect::<Result<Vec<_>, Error>>()?;
    let mut table = Table::new(std::iter::once(xname.to_string()).chain(names));
    for (i, &x) in xs.iter().enumerate() {
        let mut row = vec![x];
        row.extend_from_slice(&values[i * cols..(i + 1) * cols]);
        table.push(row);
    }
    Ok(table)
}

fn pnd_columns(ns: usize, specs: &[StateSpec], names: Vec<String>) -> Result<Table, CliError> {
    let dists = specs.iter().map(|s| pnd(s, Some(ns))).collect::<Result<Vec<_>, Error>>()?;
    let mut table = Table::new(std::iter::once("n".to_string()).chain(names));
    for k in 0..=ns {
        let mut row = vec![k as f64];
        row.extend(dists.iter().map(|d| d.level(k)));
        table.push(row);
    }
    Ok(table)
}

fn real(r: f64) -> Complex64 {
    Complex64::new(r, 0.0)
}

fn z_grid(quick: bool) -> Vec<f64> {
    Grid::new(0.05, 10.0, if quick { 25 } else { 100 }).points()
}

/// Photon statistics column `which` (1 = ⟨N⟩, 3 = g², 4 = Q) along `|z|`.
fn stats_sweep(xs: &[f64], ells: &[f64], ms: &[usize], which: usize, prefix: &str) -> Result<Table, CliError> {
    let pairs: Vec<(f64, usize)> = ells.iter().flat_map(|&l| ms.iter().map(move |&m| (l, m))).collect();
    let names = pairs
        .iter()
        .map(|&(l, m)| if ells.len() > 1 { format!("{prefix}_l{l}") } else { format!("{prefix}_m{m}") })
        .collect();
    sweep("abs_z", xs, names, pairs.len(), |r, j| {
        let (l, m) = pairs[j];
        Ok(stats_row(&StateSpec::new(real(r), l, m)?)?[which])
    })
}

pub fn figure(id: &str, quick: bool) -> Result<Table, CliError> {
    let r_grid = |lo: f64, hi: f64, n: usize| Grid::new(lo, hi, if quick { n / 4 + 2 } else { n }).points();
    match id {
        // Bessel-product weight against r for several ℓ.
        "f1" => sweep(
            "r",
            &r_grid(0.05, 5.0, 100),
            F1_ELLS.iter().map(|&l| label("w_l", l)).collect(),
            F1_ELLS.len(),
            |r, j| bg_weight(F1_ELLS[j], r),
        ),
        // PND at ℓ = 1.5 for |z|² = 6 and 9.
        "f2" => {
            let specs = [StateSpec::new(real(6f64.sqrt()), 1.5, 0)?, StateSpec::new(real(3.0), 1.5, 0)?];
            pnd_columns(30, &specs, vec!["p_z2_6".into(), "p_z2_9".into()])
        }
        // PND at |z|² = 9 for ℓ = 3.5 and 5.
        "f3" => {
            let specs = [StateSpec::new(real(3.0), 3.5, 0)?, StateSpec::new(real(3.0), 5.0, 0)?];
            pnd_columns(30, &specs, vec!["p_l3.5".into(), "p_l5".into()])
        }
        "f4" => stats_sweep(&z_grid(quick), &F1_ELLS, &[0], 3, "g2"),
        "f5" => stats_sweep(&z_grid(quick), &F1_ELLS, &[0], 4, "q"),
        // Photon-added weights at m = 3 for several ℓ.
        "f6" => sweep(
            "r",
            &r_grid(0.1, 6.0, 60),
            F6_ELLS.iter().map(|&l| label("w_l", l)).collect(),
            F6_ELLS.len(),
            |r, j| WeightFunction::new(F6_ELLS[j], 3, WeightMethod::MellinInversion)?.evaluate(r),
        ),
        // Photon-added weights at ℓ = 2.5 for several m, m = 0 from the Bessel product.
        "f7" => sweep(
            "r",
            &r_grid(0.1, 6.0, 60),
            F7_MS.iter().map(|&m| format!("w_m{m}")).collect(),
            F7_MS.len(),
            |r, j| {
                let m = F7_MS[j];
                let method = if m == 0 { WeightMethod::BesselProduct } else { WeightMethod::MellinInversion };
                WeightFunction::new(2.5, m, method)?.evaluate(r)
            },
        ),
        // Photon-added PND at ℓ = 3.5, m = 2 for |z| = 2 and 3.
        "f8" => {
            let specs = [StateSpec::new(real(2.0), 3.5, 2)?, StateSpec::new(real(3.0), 3.5, 2)?];
            pnd_columns(30, &specs, vec!["p_z2".into(), "p_z3".into()])
        }
        // Photon-added PND at ℓ = 4.5, |z| = 9 for m = 1 and 7.
        "f9" => {
            let specs = [StateSpec::new(real(9.0), 4.5, 1)?, StateSpec::new(real(9.0), 4.5, 7)?];
            pnd_columns(60, &specs, vec!["p_m1".into(), "p_m7".into()])
        }
        "f10" => stats_sweep(&z_grid(quick), &[2.5], &F10_MS, 3, "g2"),
        "f11" => stats_sweep(&z_grid(quick), &[2.5], &F10_MS, 4, "q"),
        // ⟨N⟩ of photon-added states at ℓ = 1.5.
        "f12" => stats_sweep(&z_grid(quick), &[1.5], &F12_MS, 1, "mean"),
        other => Err(CliError::Config(format!("unknown figure `{other}`"))),
    }
}

/// Writes every figure table into `dir` as `<id>.<ext>`.
pub fn write_all(dir: &Path, format: Format, quick: bool) -> Result<Vec<String>, CliError> {
    std::fs::create_dir_all(dir)?;
    let mut written = Vec::new();
    for id in FIGURES {
        let table = figure(id, quick)?;
        let name = format!("{id}.{}", format.extension());
        table.write(Some(&dir.join(&name)), format)?;
        written.push(name);
    }
    Ok(written)
}
