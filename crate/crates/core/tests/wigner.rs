use landau_cs::dynamics::Frame;
use landau_cs::error::Error;
use landau_cs::quad::{integrate, QuadOptions};
use landau_cs::states::StateSpec;
use landau_cs::wigner::{
    radial_density, wigner_cross, wigner_direct, wigner_grid, wigner_series, WignerOptions, WignerSeries,
};
use num_complex::Complex64;
use proptest::prelude::*;

fn frame() -> Frame {
    Frame::stationary(1.0, 1.0, 1.0)
}

fn evolved() -> Frame {
    Frame {
        time_integral: 0.37,
        cyclotron_integral: -0.2,
        field_phase: 0.05,
        angle: 0.6,
        ..Frame::stationary(1.3, 0.8, 2.0)
    }
}

const XS: [f64; 5] = [-1.5, -0.5, 0.0, 0.7, 1.5];
const PS: [f64; 5] = [-1.5, -0.4, 0.0, 0.8, 1.5];

#[test]
fn series_matches_direct_transform_on_probe_grid() {
    for (ell, m) in [(0.5, 0), (1.5, 2)] {
        let s = StateSpec::new(Complex64::from_polar(1.0, 0.4), ell, m).unwrap();
        for f in [frame(), evolved()] {
            let series = WignerSeries::new(&s, &f, WignerOptions::default()).unwrap();
            for x in XS {
                for p in PS {
                    let a = series.evaluate(x, p).unwrap().value;
                    let d = wigner_direct(&s, &f, x, p).unwrap();
                    assert!((a - d.re).abs() <= 1e-5 * d.re.abs(), "ell={ell} m={m} x={x} p={p}: {a} vs {d}");
                }
            }
        }
    }
}

#[test]
fn regrouped_and_expanded_sums_agree() {
    let s = StateSpec::new(Complex64::from_polar(1.4, -1.0), 1.0, 1).unwrap();
    let series = WignerSeries::new(&s, &evolved(), WignerOptions::default()).unwrap();
    for (x, p) in [(-0.8, 0.3), (0.2, -1.2), (1.1, 0.0)] {
        let a = series.evaluate(x, p).unwrap();
        let b = series.evaluate_expanded(x, p).unwrap();
        assert!((a.value - b.value).abs() <= 1e-12 * a.value.abs().max(1e-3));
    }
}

#[test]
fn vacuum_reduces_to_single_kernel() {
    // (2/π²) ξ^ℓ K_{2ip}(ξ)/Γ(ℓ+1), ξ = e^{−x}, from mpmath
    let cases = [
        (0.3, 0.7, 0.04601498427893025881696688),
        (-1.0, 0.0, 0.01817538582745499338972506),
        (1.2, -1.1, -0.006499121645285634953313158),
    ];
    let s = StateSpec::new(Complex64::new(0.0, 0.0), 0.5, 0).unwrap();
    for (x, p, expected) in cases {
        let w = wigner_series(&s, &frame(), x, p, WignerOptions::default()).unwrap();
        assert_eq!(w.levels, 1);
        assert!((w.value - expected).abs() <= 1e-12 * expected.abs(), "{} vs {expected}", w.value);
    }
}

#[test]
fn values_are_real() {
    for (r, ell, m) in [(0.5, 0.5, 0), (2.0, 1.5, 2), (3.0, 2.5, 3)] {
        let s = StateSpec::new(Complex64::from_polar(r, 2.1), ell, m).unwrap();
        let g = wigner_grid(&s, &evolved(), &XS, &PS, WignerOptions::default()).unwrap();
        assert!(g.max_imag_residue <= 1e-8, "residue {}", g.max_imag_residue);
        assert!(g.values.iter().all(|v| v.is_finite()));
    }
}

#[test]
fn momentum_marginal_is_radial_density() {
    for (ell, m) in [(0.5, 0), (1.5, 2)] {
        let s = StateSpec::new(Complex64::from_polar(1.2, 0.9), ell, m).unwrap();
        let series = WignerSeries::new(&s, &frame(), WignerOptions::default()).unwrap();
        for x in [-1.0, 0.0, 1.3] {
            let marginal = integrate(
                |p| series.evaluate(x, p).unwrap().value,
                -14.0,
                14.0,
                QuadOptions::rel(1e-10).with_abs(1e-15),
            )
            .unwrap()
            .value;
            let density = radial_density(&s, &frame(), x).unwrap();
            assert!((marginal - density).abs() <= 1e-6 * density, "{marginal} vs {density}");
        }
    }
}

#[test]
fn grid_matches_pointwise_values() {
    let s = StateSpec::new(Complex64::from_polar(1.0, 0.2), 1.0, 1).unwrap();
    let g = wigner_grid(&s, &frame(), &XS, &PS, WignerOptions::default()).unwrap();
    for (i, &x) in XS.iter().enumerate() {
        for (j, &p) in PS.iter().enumerate() {
            let w = wigner_series(&s, &frame(), x, p, WignerOptions::default()).unwrap();
            assert_eq!(g.get(i, j), w.value);
        }
    }
}

#[test]
fn nonstatic_frame_requires_flag() {
    let f = Frame { rho_dot: 0.4, ..evolved() };
    let s = StateSpec::new(Complex64::from_polar(1.0, 0.4), 1.5, 1).unwrap();
    assert!(matches!(
        wigner_series(&s, &f, 0.0, 0.0, WignerOptions::default()),
        Err(Error::NonStaticFrame { .. })
    ));
    let opts = WignerOptions { allow_nonstatic: true };
    for (x, p) in [(-0.5, 0.8), (0.4, -0.3)] {
        let a = wigner_series(&s, &f, x, p, opts).unwrap();
        let d = wigner_direct(&s, &f, x, p).unwrap();
        assert!((a.value - d.re).abs() <= 1e-8 * d.re.abs());
        assert!(a.imag_residue.abs() <= 1e-8);
    }
}

#[test]
fn cross_function_reduces_on_diagonal() {
    let s = StateSpec::new(Complex64::from_polar(0.9, -0.3), 0.5, 1).unwrap();
    let c = wigner_cross(&s, &s, &frame(), 0.3, 0.5, WignerOptions::default()).unwrap();
    let w = wigner_series(&s, &frame(), 0.3, 0.5, WignerOptions::default()).unwrap();
    assert!((c.re - w.value).abs() <= 1e-14);
    assert!(c.im.abs() <= 1e-14);
    let other = StateSpec::new(Complex64::new(0.5, 0.0), 1.5, 0).unwrap();
    assert!(matches!(
        wigner_cross(&s, &other, &frame(), 0.0, 0.0, WignerOptions::default()),
        Err(Error::IndexMismatch(..))
    ));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn series_is_real_and_bounded(r in 0.0f64..2.5, arg in -3.0f64..3.0, ell in 0.3f64..3.0, m in 0usize..3,
                                  x in -2.0f64..2.0, p in -2.0f64..2.0) {
        let s = StateSpec::new(Complex64::from_polar(r, arg), ell, m).unwrap();
        let w = wigner_series(&s, &frame(), x, p, WignerOptions::default()).unwrap();
        prop_assert!(w.imag_residue.abs() <= 1e-8);
        // Cauchy-Schwarz on the transform: |W| ≤ ‖Φ‖²/π
        let bound = integrate(|y| radial_density(&s, &frame(), y).unwrap(), -12.0, 200.0, QuadOptions::rel(1e-6)).unwrap().value;
        prop_assert!(w.value.abs() <= bound / std::f64::consts::PI * (1.0 + 1e-6));
    }
}
