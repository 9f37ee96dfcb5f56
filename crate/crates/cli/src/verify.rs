//! The verification suite: fourteen numbered criteria with tolerances and runtime budgets.

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use landau_cs::algebra::{casimir_identity, casimir_matrix, ladder_matrix, LadderKind};
use landau_cs::dynamics::{solve_ermakov, Frame, ModelProfile};
use landau_cs::measure::{identity_resolution_residual, mellin_moment_target, WeightMethod, WeightTable};
use landau_cs::specfun::bessel_i;
use landau_cs::states::{bg_norm, build_coefficients, lowering_eigenvalue_residual, pacs_norm, StateSpec};
use landau_cs::statistics::{g2, mandel_q, mean_photon_number, meijer_g_moment, statistics};
use landau_cs::wigner::{wigner_direct, WignerOptions, WignerSeries};
use landau_cs::Error;
use num_complex::Complex64;

use crate::config::Grid;
use crate::figures::{figure, F10_MS, F12_MS, F1_ELLS};
use crate::table::Table;

pub const CRITERIA: usize = 14;

const ELLS: [f64; 4] = [0.5, 1.0, 1.5, 2.0];

#[derive(Debug, Clone)]
pub struct CriterionReport {
    pub id: usize,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
    pub limit: Option<Duration>,
}

impl CriterionReport {
    pub fn status(&self) -> &'static str {
        if self.passed {
            "PASS"
        } else {
            "FAIL"
        }
    }

    pub fn line(&self) -> String {
        format!("criterion {}: {}", self.id, self.status())
    }
}

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

fn real(r: f64) -> Complex64 {
    Complex64::new(r, 0.0)
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

pub fn title(id: usize) -> &'static str {
    match id {
        1 => "small-|z| g2 limit",
        2 => "large-|z| g2 limit",
        3 => "small-|z| Mandel Q",
        4 => "sub-Poissonian sweep, m = 0",
        5 => "resolution of identity, m = 0",
        6 => "resolution of identity, photon-added",
        7 => "Meijer-G reduction identities",
        8 => "normalisation reduction at m = 0",
        9 => "su(1,1) algebra at dim 200",
        10 => "lowering eigenvalue property",
        11 => "Ermakov solver",
        12 => "Wigner series against direct transform",
        13 => "figure shape checks",
        14 => "vanishing mean photon number report",
        _ => "unknown",
    }
}

fn limit(id: usize) -> Option<Duration> {
    let secs = match id {
        1 | 2 | 3 | 7 | 8 | 9 | 10 => 1,
        4 | 11 => 5,
        5 => 30,
        6 => 300,
        12 => 120,
        13 => 60,
        _ => return None,
    };
    Some(Duration::from_secs(secs))
}

fn c1() -> Result<Outcome, Error> {
    let mut worst: f64 = 0.0;
    for ell in ELLS {
        let v = g2(&StateSpec::new(real(1e-3), ell, 0)?)?;
        worst = worst.max((v - (ell + 1.0) / (ell + 2.0)).abs());
    }
    Ok(outcome(worst <= 1e-4, format!("max |g2 - (l+1)/(l+2)| = {worst:.3e} (tol 1e-4)")))
}

fn c2() -> Result<Outcome, Error> {
    let mut worst: f64 = 0.0;
    let mut parts = Vec::new();
    for ell in ELLS {
        let v = g2(&StateSpec::new(real(50.0), ell, 0)?)?;
        worst = worst.max((v - 1.0).abs());
        parts.push(format!("l={ell}: {:.4e}", v - 1.0));
    }
    Ok(outcome(
        worst <= 5e-3,
        format!("max |g2 - 1| = {worst:.3e} (tol 5e-3); g2 - 1 at |z| = 50: {}", parts.join(", ")),
    ))
}

fn c3() -> Result<Outcome, Error> {
    let mut worst: f64 = 0.0;
    for ell in ELLS {
        let q = mandel_q(&StateSpec::new(real(0.1), ell, 0)?)?;
        worst = worst.max((q + 0.01 / ((ell + 1.0) * (ell + 2.0))).abs());
    }
    Ok(outcome(worst <= 1e-4, format!("max |Q + |z|^2/((l+1)(l+2))| = {worst:.3e} (tol 1e-4)")))
}

fn c4(quick: bool) -> Result<Outcome, Error> {
    let zs = Grid::new(0.05, 10.0, if quick { 25 } else { 100 }).points();
    let mut bad = Vec::new();
    for ell in ELLS {
        for &r in &zs {
            let s = statistics(&StateSpec::new(real(r), ell, 0)?)?;
            if !(s.q_mandel < 0.0 && s.g2 < 1.0) {
                bad.push(format!("(l={ell}, |z|={r:.3})"));
            }
        }
    }
    let total = zs.len() * ELLS.len();
    Ok(outcome(
        bad.is_empty(),
        format!("{} of {total} points violate Q < 0, g2 < 1 {}", bad.len(), bad.join(" ")),
    ))
}

fn c5() -> Result<Outcome, Error> {
    let mut worst: f64 = 0.0;
    for ell in ELLS {
        for n in 0..=10 {
            worst = worst.max(identity_resolution_residual(ell, 0, n, WeightMethod::BesselProduct)?);
        }
    }
    Ok(outcome(worst <= 1e-6, format!("max diagonal residual {worst:.3e} (tol 1e-6)")))
}

fn c6(quick: bool) -> Result<Outcome, Error> {
    let cases: &[(f64, usize)] = if quick { &[(1.5, 1)] } else { &[(1.5, 1), (2.5, 3)] };
    let mut worst_moment: f64 = 0.0;
    let mut worst_identity: f64 = 0.0;
    for &(ell, m) in cases {
        let table = WeightTable::new(ell, m, (m + 7) as f64)?;
        for s in m + 1..=m + 6 {
            let s = s as f64;
            worst_moment = worst_moment.max(rel(table.moment(s), mellin_moment_target(ell, m, s)?));
        }
        for n in 0..=6 {
            worst_identity = worst_identity.max(table.identity_residual(n));
        }
    }
    Ok(outcome(
        worst_moment <= 1e-6 && worst_identity <= 1e-4,
        format!("max moment error {worst_moment:.3e} (tol 1e-6), max diagonal residual {worst_identity:.3e} (tol 1e-4)"),
    ))
}

fn c7() -> Result<Outcome, Error> {
    let mut worst: f64 = 0.0;
    for ell in ELLS {
        for r in Grid::new(0.1, 10.0, 50).points() {
            let s = StateSpec::new(real(r), ell, 0)?;
            let expected = [
                r.powf(-ell) * bessel_i(ell, 2.0 * r)?,
                -r.powf(1.0 - ell) * bessel_i(ell + 1.0, 2.0 * r)?,
                r.powf(2.0 - ell) * bessel_i(ell + 2.0, 2.0 * r)?,
            ];
            for (i, e) in expected.iter().enumerate() {
                worst = worst.max(rel(meijer_g_moment(i, &s)?, *e));
            }
        }
    }
    Ok(outcome(worst <= 1e-10, format!("max relative deviation {worst:.3e} (tol 1e-10)")))
}

fn c8() -> Result<Outcome, Error> {
    let mut worst: f64 = 0.0;
    for ell in [0.0, 0.5, 1.0, 1.5, 2.0, 3.5] {
        for r in [0.0, 0.01, 0.3, 1.0, 2.5, 7.0, 20.0, 60.0] {
            for arg in [0.0, 1.1, -2.5] {
                let z = Complex64::from_polar(r, arg);
                worst = worst.max(rel(pacs_norm(z, ell, 0)?, bg_norm(z, ell)?));
            }
        }
    }
    Ok(outcome(worst <= 1e-12, format!("max relative deviation {worst:.3e} (tol 1e-12)")))
}

fn c9() -> Result<Outcome, Error> {
    let dim = 200;
    let mut worst: f64 = 0.0;
    for ell in [0.0, 0.5, 1.0, 1.5, 2.0, 3.7] {
        let kp = ladder_matrix(LadderKind::Raise, ell, dim).to_band();
        let km = ladder_matrix(LadderKind::Lower, ell, dim).to_band();
        let k0 = ladder_matrix(LadderKind::Diag, ell, dim).to_band();
        let checks = [
            km.commutator(&kp).sub(&k0.scale(2.0)),
            k0.commutator(&kp).sub(&kp),
            k0.commutator(&km).add(&km),
            casimir_matrix(ell, dim).sub(&casimir_identity(ell, dim)),
        ];
        for c in checks {
            worst = worst.max(c.max_abs_within(dim - 1));
        }
    }
    Ok(outcome(worst <= 1e-12, format!("max interior elementwise error {worst:.3e} (tol 1e-12)")))
}

fn c10() -> Result<Outcome, Error> {
    let mut worst: f64 = 0.0;
    for ell in [0.0, 0.5, 1.0, 1.5, 2.0, 2.5, 3.5] {
        for r in [0.01, 0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0] {
            for arg in [0.0, 0.7, 2.0, -2.9] {
                let cv = build_coefficients(&StateSpec::new(Complex64::from_polar(r, arg), ell, 0)?, 1)?;
                worst = worst.max(lowering_eigenvalue_residual(&cv));
            }
        }
    }
    Ok(outcome(worst <= 1e-10, format!("max residual {worst:.3e} (tol 1e-10)")))
}

fn c11() -> Result<Outcome, Error> {
    let grid = Grid::new(0.0, 100.0, 1001).points();
    let p = ModelProfile::constant(1.3, 0.9, 0.0, 1.0, 0.7, 0.8)?;
    let rho0 = p.stationary_rho(0.0);
    let env = solve_ermakov(&p, rho0, 0.0, &grid)?;
    let drift = env.rho.iter().map(|r| (r - rho0).abs()).fold(0.0, f64::max);
    let (m, k) = (1.0, 1.0);
    let p = ModelProfile::constant(m, 1.0, 0.0, 1.0, 1.2, k)?;
    let w = p.big_omega(0.0);
    let mut pinney: f64 = 0.0;
    for (rho0, v0) in [(0.6, 0.0), (1.7, 0.3), (1.0, -0.8)] {
        // ρ² = A + B cos 2Ωt + C sin 2Ωt with A² − B² − C² = κ²/(MΩ)²
        let c = rho0 * v0 / w;
        let a = (k * k / (m * m * w * w) + rho0.powi(4) + c * c) / (2.0 * rho0 * rho0);
        let b = rho0 * rho0 - a;
        let env = solve_ermakov(&p, rho0, v0, &grid)?;
        for (t, r) in grid.iter().zip(&env.rho) {
            let exact = (a + b * (2.0 * w * t).cos() + c * (2.0 * w * t).sin()).sqrt();
            pinney = pinney.max((r - exact).abs());
        }
    }
    Ok(outcome(
        drift <= 1e-9 && pinney <= 1e-7,
        format!("stationary drift {drift:.3e} (tol 1e-9), closed-form deviation {pinney:.3e} (tol 1e-7)"),
    ))
}

fn c12(quick: bool) -> Result<Outcome, Error> {
    let frame = Frame::stationary(1.0, 1.0, 1.0);
    let n = if quick { 3 } else { 5 };
    let xs = Grid::new(-1.5, 1.5, n).points();
    let ps = Grid::new(-1.5, 1.5, n).points();
    let mut worst: f64 = 0.0;
    let mut imag: f64 = 0.0;
    for (ell, m) in [(0.5, 0), (1.5, 2)] {
        let s = StateSpec::new(real(1.0), ell, m)?;
        let series = WignerSeries::new(&s, &frame, WignerOptions::default())?;
        for &x in &xs {
            for &p in &ps {
                let v = series.evaluate(x, p)?;
                let d = wigner_direct(&s, &frame, x, p)?;
                worst = worst.max(rel(v.value, d.re));
                imag = imag.max(v.imag_residue.abs());
            }
        }
    }
    Ok(outcome(
        worst <= 1e-5 && imag <= 1e-8,
        format!("max relative deviation {worst:.3e} (tol 1e-5), max imaginary residue {imag:.3e} (tol 1e-8)"),
    ))
}

fn col(t: &Table, name: &str) -> Vec<f64> {
    t.column(name).expect("column present")
}

fn argmax(v: &[f64]) -> usize {
    v.iter()
        .enumerate()
        .fold((0, f64::MIN), |acc, (i, &x)| if x > acc.1 { (i, x) } else { acc })
        .0
}

/// Points of `table` with `abs_z ≥ from` where the columns are not strictly decreasing left to right.
fn decreasing_in_m(table: &Table, prefix: &str, from: f64) -> (usize, usize, String) {
    let zs = col(table, "abs_z");
    let cols: Vec<Vec<f64>> = F10_MS.iter().map(|m| col(table, &format!("{prefix}_m{m}"))).collect();
    let mut bad = 0;
    let mut total = 0;
    let mut example = String::new();
    for (i, &z) in zs.iter().enumerate() {
        if z < from {
            continue;
        }
        total += 1;
        let vals: Vec<f64> = cols.iter().map(|c| c[i]).collect();
        if !vals.windows(2).all(|w| w[1] < w[0]) {
            bad += 1;
            if example.is_empty() {
                let shown: Vec<String> = vals.iter().map(|v| format!("{v:.4}")).collect();
                example = format!(" e.g. |z|={z:.2}: [{}]", shown.join(", "));
            }
        }
    }
    (bad, total, example)
}

fn c13(quick: bool) -> Result<Outcome, crate::CliError> {
    let mut notes = Vec::new();
    let mut ok = true;

    let f1 = figure("f1", quick)?;
    let ws: Vec<Vec<f64>> = F1_ELLS.iter().map(|l| col(&f1, &format!("w_l{l}"))).collect();
    let positive = ws.iter().flatten().all(|&w| w > 0.0);
    let decreasing = ws.iter().all(|c| c.windows(2).all(|p| p[1] < p[0]));
    let ordered = (0..ws[0].len()).all(|i| ws.windows(2).all(|p| p[1][i] < p[0][i]));
    ok &= positive && decreasing && ordered;
    notes.push(format!("f1 positive {positive}, decreasing in r {decreasing}, decreasing in l {ordered}"));

    let f2 = figure("f2", quick)?;
    let (a, b) = (col(&f2, "p_z2_6"), col(&f2, "p_z2_9"));
    let (ia, ib) = (argmax(&a), argmax(&b));
    let shift = ib > ia;
    let lower = b[ib] < a[ia];
    ok &= shift && lower;
    notes.push(format!(
        "f2 peak n {ia} -> {ib} (shifts right {shift}), height {:.4} -> {:.4} (decreases {lower})",
        a[ia], b[ib]
    ));

    let from = 5.0;
    let (bad, total, ex) = decreasing_in_m(&figure("f10", quick)?, "g2", from);
    ok &= bad == 0;
    notes.push(format!("f10 g2 decreasing in m for |z| >= {from}: {} of {total} points fail{ex}", bad));
    let (bad, total, ex) = decreasing_in_m(&figure("f11", quick)?, "q", from);
    ok &= bad == 0;
    notes.push(format!("f11 Q decreasing in m for |z| >= {from}: {} of {total} points fail{ex}", bad));
    Ok(outcome(ok, notes.join("; ")))
}

/// Reports whether ⟨N⟩ of photon-added states vanishes anywhere on the figure grid.
///
/// Also locates the zero of `m + G(1)/G(0)`, the mean obtained if `G(1)` is taken without its
/// alternating sign.
fn c14(quick: bool) -> Result<Outcome, Error> {
    let ell = 1.5;
    let zs = Grid::new(0.05, 10.0, if quick { 25 } else { 100 }).points();
    let mut parts = Vec::new();
    let mut vanishes = false;
    for m in F12_MS {
        let mut min = (f64::INFINITY, 0.0);
        let mut alt_zero = None;
        let mut prev: Option<(f64, f64)> = None;
        for &r in &zs {
            let s = StateSpec::new(real(r), ell, m)?;
            let (mean, _) = mean_photon_number(&s)?;
            if mean < min.0 {
                min = (mean, r);
            }
            let alt = m as f64 + meijer_g_moment(1, &s)? / meijer_g_moment(0, &s)?;
            if let Some((r0, a0)) = prev {
                if alt_zero.is_none() && a0 > 0.0 && alt <= 0.0 {
                    alt_zero = Some(r0 + (r - r0) * a0 / (a0 - alt));
                }
            }
            prev = Some((r, alt));
        }
        vanishes |= min.0 <= landau_cs::statistics::MEAN_FLOOR;
        let alt = alt_zero.map_or("none".to_string(), |z| format!("{z:.3}"));
        parts.push(format!("m={m}: min <N> {:.4} at |z|={:.2}, sign-flipped reading vanishes at |z|={alt}", min.0, min.1));
    }
    let verdict = if vanishes { "reproduced" } else { "not reproduced: <N> >= m > 0 on the whole grid" };
    Ok(outcome(true, format!("{verdict}; l={ell}; {}", parts.join("; "))))
}

/// Runs one criterion; a criterion passes only within its tolerance and its runtime budget.
pub fn run_criterion(id: usize, quick: bool) -> CriterionReport {
    let start = Instant::now();
    let result: Result<Outcome, crate::CliError> = match id {
        1 => c1().map_err(Into::into),
        2 => c2().map_err(Into::into),
        3 => c3().map_err(Into::into),
        4 => c4(quick).map_err(Into::into),
        5 => c5().map_err(Into::into),
        6 => c6(quick).map_err(Into::into),
        7 => c7().map_err(Into::into),
        8 => c8().map_err(Into::into),
        9 => c9().map_err(Into::into),
        10 => c10().map_err(Into::into),
        11 => c11().map_err(Into::into),
        12 => c12(quick).map_err(Into::into),
        13 => c13(quick),
        14 => c14(quick).map_err(Into::into),
        _ => Err(crate::CliError::Config(format!("no criterion {id}"))),
    };
    let elapsed = start.elapsed();
    let limit = limit(id);
    let (mut passed, mut detail) = match result {
        Ok(o) => (o.passed, o.detail),
        Err(e) => (false, format!("error: {e}")),
    };
    if let Some(l) = limit {
        if elapsed > l {
            passed = false;
            let _ = write!(detail, "; runtime {:.2?} exceeds {:.0?}", elapsed, l);
        }
    }
    CriterionReport {
        id,
        title: title(id),
        passed,
        detail,
        elapsed,
        limit,
    }
}

pub fn run_all(quick: bool) -> Vec<CriterionReport> {
    (1..=CRITERIA).map(|id| run_criterion(id, quick)).collect()
}

/// Pass/fail table, one line per criterion followed by its detail.
pub fn render(reports: &[CriterionReport]) -> String {
    let mut out = String::new();
    for r in reports {
        let _ = writeln!(
            out,
            "{:<4}{:<42}{:<6}{:>10.2?}  {}",
            r.id,
            r.title,
            r.status(),
            r.elapsed,
            r.detail
        );
    }
    let failed = reports.iter().filter(|r| !r.passed).count();
    let _ = writeln!(out, "{} passed, {failed} failed", reports.len() - failed);
    out
}
