//! Property tests for the football solver: closed-form round trips, sign
//! structure of the curvature extremes, scaling laws, and verifier health
//! on randomly drawn specs.

mod common;

use common::{random_rational_spec, random_spec, rat_to_f64};
use hcmu::rational::scaled_extremes;
use hcmu::{
    angles_from_extremes, curvature_extremes, geodesic_length, profile_solve, rat_int,
    verify_football, FootballSpec, Tolerances,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

proptest! {
    /// angles_from_extremes inverts curvature_extremes across the spec space.
    #[test]
    fn extremes_round_trip(a in 0.05f64..4.0, b in 0.05f64..4.0, area in 0.5f64..100.0) {
        let spec = FootballSpec::new(a, b, area).unwrap();
        let ex = curvature_extremes(&spec);
        let (alpha, beta) = angles_from_extremes(&ex, spec.area()).unwrap();
        prop_assert!((alpha - spec.alpha()).abs() <= 1e-12 * spec.alpha());
        prop_assert!((beta - spec.beta()).abs() <= 1e-12 * spec.beta());
    }

    /// Curvature extremes order like the angles: alpha > beta iff K0 > K1,
    /// and equal angles give constant curvature. Both directions.
    #[test]
    fn gap_orders_match(a in 0.05f64..4.0, b in 0.05f64..4.0, area in 0.5f64..100.0) {
        let spec = FootballSpec::new(a, b, area).unwrap();
        let ex = curvature_extremes(&spec);
        prop_assert_eq!(spec.alpha() > spec.beta(), ex.k_max() > ex.k_min());
        prop_assert_eq!(spec.alpha() == spec.beta(), ex.k_max() == ex.k_min());
        prop_assert_eq!(ex.k_max() > ex.k_min(), ex.c() < 0.0);
    }

    /// Construction canonicalizes the order and flags the swap.
    #[test]
    fn swap_is_canonicalized(a in 0.05f64..4.0, b in 0.05f64..4.0, area in 0.5f64..100.0) {
        let one = FootballSpec::new(a, b, area).unwrap();
        let two = FootballSpec::new(b, a, area).unwrap();
        prop_assert_eq!(one.alpha(), two.alpha());
        prop_assert_eq!(one.beta(), two.beta());
        prop_assert_eq!(one.swapped() ^ two.swapped(), a != b);
    }
}

/// Multiplying the area by a power of two lambda divides both extremes by
/// lambda and c by lambda^2 bitwise; the meridian length scales by the
/// square root of lambda to quadrature accuracy.
#[test]
fn area_scaling_laws() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..50 {
        let spec = random_spec(&mut rng);
        let big = FootballSpec::new(spec.alpha(), spec.beta(), 4.0 * spec.area()).unwrap();
        let (ex, ex4) = (curvature_extremes(&spec), curvature_extremes(&big));
        assert_eq!(ex.k_max() / 4.0, ex4.k_max());
        assert_eq!(ex.k_min() / 4.0, ex4.k_min());
        assert_eq!(ex.c() / 16.0, ex4.c());
        let l = geodesic_length(&ex).unwrap();
        let l4 = geodesic_length(&ex4).unwrap();
        assert!((l4 - 2.0 * l).abs() <= 1e-8 * l, "l = {l}, l4 = {l4}");
    }
}

/// The sign structure of the extremes is a theorem in exact arithmetic:
/// K0 > 0, K0 >= K1 with equality only for equal angles, and 2*K1 + K0 > 0
/// (scaled by the positive factor 4*pi/A, so signs transfer to floats).
#[test]
fn rational_sign_structure() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let zero = rat_int(0);
    for _ in 0..200 {
        let (alpha, beta, spec) = random_rational_spec(&mut rng);
        let (s0, s1) = scaled_extremes(&alpha, &beta);
        assert!(s0 > zero);
        assert!(s0 > s1);
        assert!(&s1 + &s1 + &s0 > zero);
        let ex = curvature_extremes(&spec);
        assert!(ex.k_max() > 0.0);
        assert_eq!(ex.k_min() > 0.0, s1 > zero);
        assert_eq!(ex.k_min() == 0.0, s1 == zero);
        assert!((rat_to_f64(&alpha) - spec.alpha()).abs() <= f64::EPSILON * spec.alpha());
    }
}

/// Solved profiles satisfy every verifier check at two resolutions.
#[test]
fn random_profiles_verify() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let tol = Tolerances::default();
    for _ in 0..40 {
        let spec = random_spec(&mut rng);
        for n in [65usize, 257] {
            let profile = profile_solve(&spec, n).unwrap();
            let rep = verify_football(&profile, &tol);
            assert!(
                rep.passed(),
                "spec ({}, {}, {}) at n = {n} failed {:?}",
                spec.alpha(),
                spec.beta(),
                spec.area(),
                rep.failed_names()
            );
        }
    }
}

/// The solver's length and the standalone quadrature agree; both equal the
/// profile's last abscissa.
#[test]
fn lengths_are_consistent() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..40 {
        let spec = random_spec(&mut rng);
        let l = geodesic_length(&curvature_extremes(&spec)).unwrap();
        let profile = profile_solve(&spec, 129).unwrap();
        assert!((profile.length - l).abs() <= 1e-8 * l);
        assert_eq!(profile.samples.last().unwrap().u, profile.length);
    }
}
