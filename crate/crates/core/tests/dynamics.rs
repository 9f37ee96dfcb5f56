use std::f64::consts::PI;

use landau_cs::dynamics::{
    hamiltonian_expectation, invariant_eigenvalue, number_wavefunction, phase, solve_ermakov, FieldLaw, ModelProfile,
};
use landau_cs::quad::{gauss_legendre, integrate, QuadOptions};
use landau_cs::specfun::{laguerre, log_gamma};
use num_complex::Complex64;

fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect()
}

fn bundled_profiles() -> Vec<ModelProfile> {
    vec![
        ModelProfile::constant(1.0, 1.0, 0.3, 1.0, 0.8, 1.0).unwrap(),
        ModelProfile::caldirola_kanai(1.0, 0.05, 1.2, 1.0, 0.5, 1.0).unwrap(),
        ModelProfile::modulated_frequency(1.0, 1.0, 0.2, 1.7, 1.0, 0.4, 0.7).unwrap(),
        ModelProfile::from_config_str("kind = modulated-mass\nmass = 1.5\neps = 0.3\nfreq = 0.9\nbfield = 1\n").unwrap(),
    ]
}

#[test]
fn stationary_envelope_is_preserved() {
    let p = ModelProfile::constant(1.3, 0.9, 0.0, 1.0, 0.7, 0.8).unwrap();
    let rho0 = p.stationary_rho(0.0);
    let env = solve_ermakov(&p, rho0, 0.0, &linspace(0.0, 100.0, 1001)).unwrap();
    let worst = env.rho.iter().map(|r| (r - rho0).abs()).fold(0.0, f64::max);
    assert!(worst < 1e-9, "drift {worst:e}");
}

#[test]
fn pinney_closed_form() {
    let (m, k) = (1.0, 1.0);
    let p = ModelProfile::constant(m, 1.0, 0.0, 1.0, 1.2, k).unwrap();
    let w = p.big_omega(0.0);
    for &(rho0, v0) in &[(0.6, 0.0), (1.7, 0.3), (1.0, -0.8)] {
        let c = rho0 * v0 / w;
        let a = (k * k / (m * m * w * w) + rho0.powi(4) + c * c) / (2.0 * rho0 * rho0);
        let b = rho0 * rho0 - a;
        assert!((a * a - b * b - c * c - k * k / (m * m * w * w)).abs() < 1e-12);
        let grid = linspace(0.0, 100.0, 2001);
        let env = solve_ermakov(&p, rho0, v0, &grid).unwrap();
        for (t, r) in grid.iter().zip(&env.rho) {
            let exact = (a + b * (2.0 * w * t).cos() + c * (2.0 * w * t).sin()).sqrt();
            assert!((r - exact).abs() < 1e-7, "t={t} rho={r} exact={exact}");
        }
    }
}

#[test]
fn small_mass_perturbation_stays_close() {
    let eps = 1e-6;
    let base = ModelProfile::constant(1.0, 1.0, 0.0, 1.0, 0.0, 1.0).unwrap();
    let pert = ModelProfile::from_config_str("kind = modulated-mass\nmass = 1\neps = 1e-6\nfreq = 1\n").unwrap();
    let grid = linspace(0.0, 20.0, 201);
    let a = solve_ermakov(&base, 1.0, 0.0, &grid).unwrap();
    let b = solve_ermakov(&pert, 1.0, 0.0, &grid).unwrap();
    for (x, y) in a.rho.iter().zip(&b.rho) {
        assert!((x - y).abs() < 50.0 * eps);
    }
}

#[test]
fn residual_bound_for_bundled_profiles() {
    for p in bundled_profiles() {
        let env = solve_ermakov(&p, 0.9, 0.1, &linspace(0.0, 30.0, 301)).unwrap();
        assert!(env.max_residual() <= 1e-8, "{:?}: {:e}", p.mass, env.max_residual());
        assert!(env.rho.iter().all(|&r| r > 0.0));
    }
}

#[test]
fn phase_constant_parameters() {
    let p = ModelProfile::constant(1.2, 0.8, 0.4, 1.5, 0.6, 0.9).unwrap();
    let rho = p.stationary_rho(0.0);
    let env = solve_ermakov(&p, rho, 0.0, &linspace(0.0, 10.0, 11)).unwrap();
    assert_eq!(phase(&p, &env, 2, 1.5, 0.0).unwrap().gamma, 0.0);
    for &(n, ell, t) in &[(0, 0.0, 1.0), (2, 1.5, 3.3), (5, 0.5, 10.0)] {
        let (m, k, e, q) = (1.2, 0.9, 0.4, 1.5);
        let level = 2.0 * n as f64 + ell + 1.0;
        let expected = (-(k / (2.0 * m * rho * rho)) * level - 0.5 * ell * p.cyclotron(0.0) + q * q * e * e / (2.0 * m * 0.8)) * t;
        let got = phase(&p, &env, n, ell, t).unwrap().gamma;
        assert!((got - expected).abs() < 1e-10 * expected.abs().max(1.0), "{got} vs {expected}");
    }
}

#[test]
fn phase_piecewise_field_segments() {
    let mut p = ModelProfile::constant(1.0, 1.3, 0.0, 0.7, 0.0, 1.0).unwrap();
    p.efield = FieldLaw::Piecewise {
        breaks: vec![1.25, 2.5],
        values: vec![0.0, 2.0, 0.5],
    };
    let p = p.validated().unwrap();
    let rho = p.stationary_rho(0.0);
    let env = solve_ermakov(&p, rho, 0.0, &linspace(0.0, 4.0, 5)).unwrap();
    let t = 3.7;
    let field = 0.5 * 0.49 * (4.0 * 1.25 + 0.25 * (t - 2.5)) / 1.3;
    let expected = -0.5 / (rho * rho) * t + field;
    let got = phase(&p, &env, 0, 0.0, t).unwrap().gamma;
    assert!((got - expected).abs() < 1e-10, "{got} vs {expected}");
}

#[test]
fn phase_is_additive() {
    let p = ModelProfile::caldirola_kanai(1.0, 0.08, 1.1, 1.0, 0.9, 1.0).unwrap();
    let env = solve_ermakov(&p, 1.1, -0.2, &linspace(0.0, 12.0, 25)).unwrap();
    let (t1, t2) = (3.27, 9.71);
    let g1 = phase(&p, &env, 3, 0.5, t1).unwrap().gamma;
    let g2 = phase(&p, &env, 3, 0.5, t2).unwrap().gamma;
    let level = 2.0 * 3.0 + 0.5 + 1.0;
    let inner = integrate(
        |t: f64| {
            let r = env.state_at(t).unwrap().0;
            -0.5 * level / (p.mass_at(t) * r * r) - 0.25 * p.cyclotron(t)
        },
        t1,
        t2,
        QuadOptions::rel(1e-13),
    )
    .unwrap()
    .value;
    assert!((g2 - (g1 + inner)).abs() < 1e-10);
}

fn radial_inner(p: &ModelProfile, env: &landau_cs::dynamics::EnvelopeSolution, n1: usize, n2: usize, ell: f64, t: f64) -> Complex64 {
    let (x, w) = gauss_legendre(16);
    let opts = QuadOptions::rel(1e-11).with_abs(1e-13);
    let mut total = Complex64::new(0.0, 0.0);
    for (xi, wi) in x.iter().zip(&w) {
        let th = PI * (xi + 1.0);
        let radial = integrate(
            |r: f64| {
                let a = number_wavefunction(p, env, n1, ell, r, th, t).unwrap();
                let b = number_wavefunction(p, env, n2, ell, r, th, t).unwrap();
                a.conj() * b * r
            },
            0.0,
            40.0,
            opts,
        )
        .unwrap()
        .value;
        total += radial * (PI * wi);
    }
    total
}

#[test]
fn number_states_are_orthonormal() {
    let p = ModelProfile::modulated_frequency(1.0, 1.0, 0.3, 1.1, 1.0, 0.5, 1.0).unwrap();
    let env = solve_ermakov(&p, 0.8, 0.25, &linspace(0.0, 5.0, 6)).unwrap();
    let t = 2.3;
    for &ell in &[0.0, 1.0, 2.5] {
        for n1 in 0..4 {
            for n2 in n1..4 {
                let v = radial_inner(&p, &env, n1, n2, ell, t);
                let expected = if n1 == n2 { 1.0 } else { 0.0 };
                assert!((v - expected).norm() < 1e-7, "ell={ell} ({n1},{n2}) -> {v}");
            }
        }
    }
}

#[test]
fn ground_state_has_no_radial_nodes() {
    let p = ModelProfile::constant(1.0, 1.0, 0.0, 1.0, 1.0, 1.0).unwrap();
    let env = solve_ermakov(&p, 1.0, 0.0, &[0.0, 1.0]).unwrap();
    for i in 1..400 {
        let r = i as f64 * 0.01;
        assert!(number_wavefunction(&p, &env, 0, 1.5, r, 0.3, 0.5).unwrap().norm() > 0.0);
    }
}

#[test]
fn reduces_to_invariant_eigenfunction() {
    let (m, k) = (1.4, 0.6);
    let p = ModelProfile::constant(m, 0.9, 0.0, 1.0, 0.0, k).unwrap();
    let rho = 1.3;
    let env = solve_ermakov(&p, rho, 0.0, &[0.0, 1.0]).unwrap();
    for &(n, ell) in &[(0usize, 0.5), (3, 1.0), (7, 2.5)] {
        for &(r, th) in &[(0.2, 0.1), (1.1, 2.0), (2.7, -1.0)] {
            let got = number_wavefunction(&p, &env, n, ell, r, th, 0.0).unwrap();
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            let norm = (log_gamma(n as f64 + 1.0).unwrap() - log_gamma(n as f64 + ell + 1.0).unwrap()).exp().sqrt();
            let amp = sign * k.powf(0.5 * (1.0 + ell)) / (rho.powf(1.0 + ell) * PI.sqrt())
                * norm
                * r.powf(ell)
                * (-k / (rho * rho) * r * r / 2.0).exp()
                * laguerre(n, ell, k * r * r / (rho * rho)).unwrap();
            let expected = Complex64::from_polar(amp, ell * th);
            assert!((got - expected).norm() <= 1e-12 * expected.norm().max(1e-300), "{got} vs {expected}");
        }
    }
}

#[test]
fn invariant_eigenvalues() {
    let p = ModelProfile::constant(1.0, 1.0, 0.0, 1.0, 0.0, 1.0).unwrap();
    assert_eq!(invariant_eigenvalue(&p, 0, 0.0), 1.0);
    assert_eq!(invariant_eigenvalue(&p, 3, 2.0), 9.0);
    assert!(invariant_eigenvalue(&p, 4, 2.0) > invariant_eigenvalue(&p, 3, 2.0));
    assert!(invariant_eigenvalue(&p, 3, 2.5) > invariant_eigenvalue(&p, 3, 2.0));
}

#[test]
fn hamiltonian_static_limit_and_field_shift() {
    let (m, w, q, b, k) = (1.1, 0.9, 1.0, 0.8, 0.7);
    let p = ModelProfile::constant(m, w, 0.0, q, b, k).unwrap();
    let rho = p.stationary_rho(0.0);
    let env = solve_ermakov(&p, rho, 0.0, &linspace(0.0, 5.0, 6)).unwrap();
    let big = p.big_omega(0.0);
    for &(n, ell) in &[(0usize, 0.0), (2, 1.5), (5, 3.0)] {
        let h = hamiltonian_expectation(&p, &env, n, ell, 2.5).unwrap();
        let expected = big * (2.0 * n as f64 + ell + 1.0) - 0.5 * ell * q * b / m;
        assert!((h - expected).abs() < 1e-9, "{h} vs {expected}");
    }
    let e = 0.6;
    let pe = ModelProfile::constant(m, w, e, q, b, k).unwrap();
    let env_e = solve_ermakov(&pe, rho, 0.0, &[0.0, 1.0]).unwrap();
    let drop = hamiltonian_expectation(&p, &env, 1, 1.0, 0.5).unwrap() - hamiltonian_expectation(&pe, &env_e, 1, 1.0, 0.5).unwrap();
    assert!((drop - q * q * e * e / (2.0 * m * w)).abs() < 1e-12);
    let h = |n| hamiltonian_expectation(&p, &env, n, 0.5, 1.0).unwrap();
    assert!(((h(2) - h(1)) - (h(1) - h(0))).abs() < 1e-12);
}

#[test]
fn singular_and_invalid_inputs() {
    let p = ModelProfile::constant(1.0, 1.0, 0.0, 1.0, 0.0, 1.0).unwrap();
    assert!(solve_ermakov(&p, -1.0, 0.0, &[0.0, 1.0]).is_err());
    assert!(solve_ermakov(&p, 1.0, 0.0, &[1.0, 0.0]).is_err());
}
