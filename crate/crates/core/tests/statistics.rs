use landau_cs::states::{build_coefficients, StateSpec};
use landau_cs::statistics::{
    bg_statistics_closed, g2, g2_small_z_limit, mandel_q, mandel_q_small_z, mean_photon_number, meijer_g_moment, pnd,
    pnd_small_z, statistics,
};
use landau_cs::specfun::bessel_i;
use num_complex::Complex64;
use proptest::prelude::*;

fn spec(r: f64, ell: f64, m: usize) -> StateSpec {
    StateSpec::new(Complex64::from_polar(r, 0.3), ell, m).unwrap()
}

const ELLS: [f64; 4] = [0.5, 1.0, 1.5, 2.0];

#[test]
fn pnd_matches_coefficients_and_sums_to_one() {
    for ell in ELLS {
        for m in 0..4 {
            for r in [0.2, 1.0, 3.5, 9.0] {
                let s = spec(r, ell, m);
                let p = pnd(&s, None).unwrap();
                assert_eq!(p.offset, m);
                assert!((p.total() - 1.0).abs() < 1e-12);
                assert!(p.probabilities.iter().all(|&x| (0.0..=1.0).contains(&x)));
                let cv = build_coefficients(&s, 1).unwrap();
                for (n, pn) in p.probabilities.iter().enumerate() {
                    assert!((pn - cv.coeffs[n + m].norm_sqr()).abs() <= 1e-14);
                    assert_eq!(p.level(n + m), *pn);
                }
            }
        }
    }
    let p = pnd(&spec(1.0, 1.0, 2), Some(3)).unwrap();
    assert_eq!(p.probabilities.len(), 4);
    assert_eq!(p.level(1), 0.0);
}

#[test]
fn pnd_closed_form_and_small_z_limit() {
    for ell in ELLS {
        let r = 1.7;
        let p = pnd(&spec(r, ell, 0), Some(8)).unwrap();
        for n in 0..8 {
            let nf = n as f64;
            let lg = |x: f64| landau_cs::specfun::log_gamma(x).unwrap();
            let expected = ((2.0 * nf + ell) * r.ln() - lg(nf + 1.0) - lg(nf + ell + 1.0)).exp() / bessel_i(ell, 2.0 * r).unwrap();
            assert!((p.probabilities[n] - expected).abs() <= 1e-13 * expected.max(1e-300));
        }
        let z = Complex64::new(1e-4, 0.0);
        let p = pnd(&StateSpec::new(z, ell, 0).unwrap(), Some(3)).unwrap();
        for n in 0..=3 {
            let ratio = p.probabilities[n] / pnd_small_z(z, ell, n);
            assert!((ratio - 1.0).abs() < 1e-6, "ell={ell} n={n}: {ratio}");
        }
    }
}

#[test]
fn mean_photon_number_values() {
    assert_eq!(mean_photon_number(&spec(0.0, 1.0, 0)).unwrap().0, 0.0);
    for m in 1..5 {
        assert_eq!(mean_photon_number(&spec(0.0, 1.5, m)).unwrap().0, m as f64);
    }
    let expected = 1.316_094_534_718_719_171_125_662_852_98;
    let (mean, _) = mean_photon_number(&spec(2.0, 1.0, 0)).unwrap();
    assert!((mean - expected).abs() < 1e-13);
    let closed = 2.0 * bessel_i(2.0, 4.0).unwrap() / bessel_i(1.0, 4.0).unwrap();
    assert!((mean - closed).abs() < 1e-13);
}

#[test]
fn bessel_closed_forms_match_series() {
    for ell in ELLS {
        for r in [0.05, 0.5, 1.0, 2.7, 6.0, 10.0] {
            let s = statistics(&spec(r, ell, 0)).unwrap();
            let c = bg_statistics_closed(Complex64::new(r, 0.0), ell).unwrap();
            assert!((s.mean_n - c.mean_n).abs() <= 1e-10 * c.mean_n);
            assert!((s.mean_n2 - c.mean_n2).abs() <= 1e-10 * c.mean_n2);
            assert!((s.g2 - c.g2).abs() <= 1e-10);
            assert!((s.q_mandel - c.q_mandel).abs() <= 1e-10);
        }
    }
}

#[test]
fn bg_states_are_sub_poissonian() {
    for ell in ELLS {
        for i in 1..=40 {
            let r = 0.25 * i as f64;
            let s = statistics(&spec(r, ell, 0)).unwrap();
            assert!(s.g2 < 1.0);
            assert!(s.q_mandel > -1.0 && s.q_mandel < 0.0);
            assert!((s.q_mandel - s.mean_n * (s.g2 - 1.0)).abs() == 0.0);
            assert!(s.mean_n2 >= s.mean_n * s.mean_n);
        }
    }
}

#[test]
fn small_and_large_z_limits() {
    let g = g2(&spec(1e-3, 2.0, 0)).unwrap();
    assert!((g - 0.75).abs() < 1e-5);
    for ell in ELLS {
        assert!((g2(&spec(1e-3, ell, 0)).unwrap() - g2_small_z_limit(ell)).abs() < 1e-5);
        let z = Complex64::new(1e-3, 0.0);
        let q = mandel_q(&StateSpec::new(z, ell, 0).unwrap()).unwrap();
        assert!((q / mandel_q_small_z(z, ell) - 1.0).abs() < 1e-5);
        assert!((g2(&spec(300.0, ell, 0)).unwrap() - 1.0).abs() < 2e-3);
    }
    assert_eq!(mandel_q(&spec(0.0, 1.0, 0)).unwrap(), 0.0);
}

#[test]
fn photon_added_reference_values() {
    let s = statistics(&spec(6.0, 2.5, 2)).unwrap();
    assert!((s.mean_n - 8.184_677_376_332_330_538_238_683_084_16).abs() < 1e-11);
    assert!((s.g2 - 0.923_992_646_939_736_157_974_187_411_925).abs() < 1e-12);
    assert!((s.q_mandel + 0.622_095_663_027_245_396_972_121_396_12).abs() < 1e-11);
    assert!(s.g2 < 1.0);
}

#[test]
fn meijer_moment_relations() {
    for ell in [0.5, 1.0, 1.5, 2.0, 2.5] {
        for r in [0.3, 1.0, 2.5, 6.0] {
            let z = Complex64::new(r, 0.0);
            let i = |k: f64| bessel_i(ell + k, 2.0 * r).unwrap();
            let m0 = StateSpec::new(z, ell, 0).unwrap();
            let rel = |a: f64, b: f64| (a - b).abs() / b.abs();
            assert!(rel(meijer_g_moment(0, &m0).unwrap(), r.powf(-ell) * i(0.0)) < 1e-12);
            assert!(rel(meijer_g_moment(1, &m0).unwrap(), -r.powf(1.0 - ell) * i(1.0)) < 1e-12);
            assert!(rel(meijer_g_moment(2, &m0).unwrap(), r.powf(2.0 - ell) * i(2.0)) < 1e-12);
            for m in 0..5 {
                let s = StateSpec::new(z, ell, m).unwrap();
                let g: Vec<f64> = (0..3).map(|k| meijer_g_moment(k, &s).unwrap()).collect();
                let mf = m as f64;
                let (mean, mean2) = mean_photon_number(&s).unwrap();
                assert!(rel(mf - g[1] / g[0], mean) < 1e-10);
                assert!(rel(mf * mf - (2.0 * mf + 1.0) * g[1] / g[0] + g[2] / g[0], mean2) < 1e-10);
            }
        }
    }
}

proptest! {
    #[test]
    fn q_is_mean_times_g2_minus_one(r in 0.01f64..20.0, ell in 0.0f64..5.0, m in 0usize..6) {
        let s = statistics(&spec(r, ell, m)).unwrap();
        prop_assert_eq!(s.q_mandel, s.mean_n * (s.g2 - 1.0));
        prop_assert!(s.mean_n2 >= s.mean_n * s.mean_n);
        prop_assert!(s.mean_n >= m as f64);
    }
}
