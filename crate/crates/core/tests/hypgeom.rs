mod common;

use astro_float::expr;
use common::{big, ctx, rel_err, to_f64};
use smalleig::hypgeom::*;

const GRID: usize = 100;

#[test]
fn split_matches_oracle_on_grid() {
    let mut c = ctx();
    for i in 0..GRID {
        let l = 0.05 + 7.25 * i as f64 / (GRID - 1) as f64;
        let x = big(l);
        let want = to_f64(&expr!(4 * asinh(1 / sinh(x / 4)), &mut c));
        let got = orthogonal_pants_split(l).unwrap();
        assert!(rel_err(got, want) < 1e-12, "{l}: {got} vs {want}");
    }
    let x = big(2.0);
    let at_two = to_f64(&expr!(4 * asinh(1 / sinh(x / 4)), &mut c));
    assert!(rel_err(orthogonal_pants_split(2.0).unwrap(), at_two) < 1e-14);
}

#[test]
fn beta_gamma_matches_oracle_on_grid() {
    let mut c = ctx();
    for i in 0..GRID {
        let l = 10f64.powf(-8.0 + 8.0 * i as f64 / (GRID - 1) as f64);
        let x = big(l);
        let want = to_f64(&expr!(x * cosh(pow(acosh(2 / x), 0.25) / 2), &mut c));
        let got = beta_gamma(l).unwrap();
        assert!(rel_err(got, want) < 1e-12, "{l}: {got} vs {want}");
        assert!(got > l);
    }
    // frozen oracle values
    assert!(rel_err(beta_gamma(0.01).unwrap(), 0.013218927149246198) < 1e-13);
    assert!(rel_err(beta_gamma(1.0 / 16.0).unwrap(), 0.07912029856526761) < 1e-13);
    assert!(beta_gamma(1.5).is_err() && beta_gamma(0.0).is_err());
}

#[test]
fn beta_threshold_and_bound() {
    let mut c = ctx();
    for i in 0..GRID {
        let k = 0.01 + 0.48 * i as f64 / (GRID - 1) as f64;
        let x = big(k);
        let want = to_f64(&expr!(exp(pow(2, -7 / 3) * pow(x, -4 / 3)), &mut c));
        assert!(rel_err(beta_threshold(k), want) < 1e-12, "{k}");
    }
    assert!((beta_threshold(0.25) - 3.525143165955235).abs() < 1e-12);
    let (b, valid) = beta_bound(4, 0.25).unwrap();
    assert!(valid && (b - 0.25).abs() < 1e-15);
    assert!(beta_gamma(1.0 / 16.0).unwrap() <= b);
    assert!(!beta_bound(3, 0.25).unwrap().1);
    // κ → ½ approaches 2/n
    let (near_half, _) = beta_bound(100, 0.4999999).unwrap();
    assert!(near_half < 0.02 && (near_half - 0.02).abs() < 1e-7);
    assert!(beta_bound(1, 0.25).is_err() && beta_bound(4, 0.5).is_err());
}

#[test]
fn beta_bound_holds_above_threshold() {
    for kappa in [0.1, 0.25, 0.4] {
        let start = beta_threshold(kappa).ceil().max(2.0) as u64;
        for n in start..=10_000 {
            let (b, valid) = beta_bound(n, kappa).unwrap();
            assert!(valid);
            let l = 1.0 / (n as f64 * n as f64);
            assert!(beta_gamma(l).unwrap() <= b, "kappa {kappa} n {n}");
        }
    }
}

#[test]
fn touching_horocycles() {
    let mut c = ctx();
    let want = to_f64(&expr!(2 * acosh(2 * pi * pi - 1), &mut c));
    let got = touching_horocycle_boundary();
    assert!(rel_err(got, want) < 1e-14);
    assert!((got - 7.246105089843412).abs() < 1e-12);
    // the literature decimal 7.261 is within the allowed rounding window
    assert!((got - 7.261).abs() < 2e-2);
    let split = orthogonal_pants_split(got).unwrap();
    assert!((split - 1.3191).abs() < 2e-3, "{split}");
    assert!(split < got);
    let t = 2.0 * std::f64::consts::PI;
    assert_eq!(horocycle_pants_bounds(t, HorocycleContact::TwoCuspTouch).unwrap(), 2.0 * t);
    assert_eq!(horocycle_pants_bounds(t, HorocycleContact::SelfIntersect).unwrap(), t);
}

#[test]
fn volume_is_additive_over_pants() {
    let pants = volume(SurfaceSignature::new(0, 3).unwrap());
    for g in 0..6 {
        for n in 1..12 {
            if let Ok(sig) = SurfaceSignature::new(g, n) {
                assert!((volume(sig) - sig.euler() as f64 * pants).abs() < 1e-12 * volume(sig));
            }
        }
    }
}
