use landau_cs::algebra::{
    casimir_identity, casimir_matrix, casimir_value, ladder_matrix, raise_power_coefficient, BandMatrix, LadderKind,
};
use num_complex::Complex64;
use proptest::prelude::*;

const DIM: usize = 200;
const ELLS: [f64; 6] = [0.0, 0.5, 1.0, 1.5, 2.0, 3.7];

fn generators(ell: f64) -> (BandMatrix, BandMatrix, BandMatrix) {
    (
        ladder_matrix(LadderKind::Raise, ell, DIM).to_band(),
        ladder_matrix(LadderKind::Lower, ell, DIM).to_band(),
        ladder_matrix(LadderKind::Diag, ell, DIM).to_band(),
    )
}

fn interior_max(m: &BandMatrix) -> f64 {
    m.max_abs_within(DIM - 1)
}

#[test]
fn lowering_annihilates_ground_state() {
    for ell in ELLS {
        let km = ladder_matrix(LadderKind::Lower, ell, 8);
        let mut v = vec![Complex64::new(0.0, 0.0); 8];
        v[0] = Complex64::new(1.0, 0.0);
        assert!(km.apply(&v).iter().all(|x| x.norm() == 0.0));
    }
}

#[test]
fn su11_commutators_on_interior() {
    for ell in ELLS {
        let (kp, km, k0) = generators(ell);
        let c1 = km.commutator(&kp).sub(&k0.scale(2.0));
        let c2 = k0.commutator(&kp).sub(&kp);
        let c3 = k0.commutator(&km).add(&km);
        for c in [c1, c2, c3] {
            assert!(interior_max(&c) <= 1e-12, "ell={ell}: {:e}", interior_max(&c));
        }
    }
}

#[test]
fn casimir_is_scalar_on_interior() {
    for ell in ELLS {
        let k2 = casimir_matrix(ell, DIM);
        let diff = k2.sub(&casimir_identity(ell, DIM));
        assert!(interior_max(&diff) <= 1e-12, "ell={ell}: {:e}", interior_max(&diff));
        assert!((k2.get(7, 7) - casimir_value(ell)).abs() <= 1e-15);
    }
}

#[test]
fn number_operator_diagonals() {
    for ell in ELLS {
        let (kp, km, _) = generators(ell);
        let a = kp.mul(&km);
        let b = km.mul(&kp);
        for n in 0..DIM - 1 {
            let nf = n as f64;
            let ea = nf * (nf + ell);
            let eb = (nf + 1.0) * (nf + ell + 1.0);
            assert!((a.get(n, n) - ea).abs() <= 1e-12 * ea.max(1.0));
            assert!((b.get(n, n) - eb).abs() <= 1e-12 * eb);
        }
    }
}

#[test]
fn casimir_commutes_with_generators() {
    for ell in ELLS {
        let (kp, km, k0) = generators(ell);
        let k2 = casimir_matrix(ell, DIM);
        for g in [&kp, &km, &k0] {
            let c = k2.commutator(g);
            assert!(c.max_abs_within(DIM - 2) <= 1e-12, "ell={ell}: {:e}", c.max_abs_within(DIM - 2));
        }
    }
}

#[test]
fn casimir_values() {
    assert_eq!(casimir_value(1.0), 0.0);
    assert_eq!(casimir_value(2.0), 0.75);
    for k in 1..6 {
        let k = k as f64 * 0.5 + 0.5;
        assert!((casimir_value(2.0 * k - 1.0) - k * (k - 1.0)).abs() < 1e-15);
    }
}

#[test]
fn raise_power_matches_iteration() {
    let expected = (120.0f64 * 720.0 / 12.0).sqrt();
    assert!((raise_power_coefficient(2, 1.0, 3) - expected).abs() < 1e-12 * expected);
    let kp = ladder_matrix(LadderKind::Raise, 1.7, 40);
    for n in 0..10 {
        let mut v = vec![Complex64::new(0.0, 0.0); 40];
        v[n] = Complex64::new(1.0, 0.0);
        for m in 0..8 {
            let c = raise_power_coefficient(n, 1.7, m);
            assert!((v[n + m].re - c).abs() <= 1e-12 * c, "n={n} m={m}");
            v = kp.apply(&v);
        }
    }
}

proptest! {
    #[test]
    fn raise_power_single_step(n in 0usize..300, ell in 0.0f64..10.0) {
        let c = raise_power_coefficient(n, ell, 1);
        let direct = (((n + 1) as f64) * (n as f64 + ell + 1.0)).sqrt();
        prop_assert!((c - direct).abs() <= 1e-12 * direct);
        prop_assert_eq!(raise_power_coefficient(n, ell, 0), 1.0);
    }

    #[test]
    fn commutator_holds_for_random_ell(ell in 0.0f64..20.0) {
        let d = 30;
        let kp = ladder_matrix(LadderKind::Raise, ell, d).to_band();
        let km = ladder_matrix(LadderKind::Lower, ell, d).to_band();
        let k0 = ladder_matrix(LadderKind::Diag, ell, d).to_band();
        let c = km.commutator(&kp).sub(&k0.scale(2.0));
        prop_assert!(c.max_abs_within(d - 1) <= 1e-12);
    }
}
