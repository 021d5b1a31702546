//! Shared helpers for the integration tests: an ODE-shooting length oracle
//! that never touches the library's quadrature path, and seeded generators
//! for random specs and angle problems.

#![allow(dead_code)]

use hcmu::{rat, rat_int, AngleProblem, FootballSpec, Rat};
use rand::Rng;

/// Cash-Karp embedded Runge-Kutta 4(5) step for y'' = q(y), state (y, v).
///
/// Returns (y, v, error estimate) for one step of size h.
fn ck45_step(y: f64, v: f64, h: f64, q: impl Fn(f64) -> f64) -> (f64, f64, f64) {
    const A: [[f64; 5]; 5] = [
        [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0],
        [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0],
        [3.0 / 10.0, -9.0 / 10.0, 6.0 / 5.0, 0.0, 0.0],
        [-11.0 / 54.0, 5.0 / 2.0, -70.0 / 27.0, 35.0 / 27.0, 0.0],
        [
            1631.0 / 55296.0,
            175.0 / 512.0,
            575.0 / 13824.0,
            44275.0 / 110592.0,
            253.0 / 4096.0,
        ],
    ];
    const B5: [f64; 6] = [
        37.0 / 378.0,
        0.0,
        250.0 / 621.0,
        125.0 / 594.0,
        0.0,
        512.0 / 1771.0,
    ];
    const B4: [f64; 6] = [
        2825.0 / 27648.0,
        0.0,
        18575.0 / 48384.0,
        13525.0 / 55296.0,
        277.0 / 14336.0,
        1.0 / 4.0,
    ];

    let mut ky = [0.0f64; 6];
    let mut kv = [0.0f64; 6];
    ky[0] = v;
    kv[0] = q(y);
    for s in 1..6 {
        let mut yy = y;
        let mut vv = v;
        for (j, a) in A[s - 1].iter().enumerate().take(s) {
            yy += h * a * ky[j];
            vv += h * a * kv[j];
        }
        ky[s] = vv;
        kv[s] = q(yy);
    }
    let mut y5 = y;
    let mut v5 = v;
    let mut y4 = y;
    let mut v4 = v;
    for s in 0..6 {
        y5 += h * B5[s] * ky[s];
        v5 += h * B5[s] * kv[s];
        y4 += h * B4[s] * ky[s];
        v4 += h * B4[s] * kv[s];
    }
    let err = (y5 - y4).abs().max((v5 - v4).abs());
    (y5, v5, err)
}

/// Integrates (y, v) from (u0, y0, v0) to exactly u1 with adaptive steps.
fn ck45_to(
    mut u: f64,
    mut y: f64,
    mut v: f64,
    u1: f64,
    scale: f64,
    q: impl Fn(f64) -> f64 + Copy,
) -> (f64, f64) {
    let tol = 1e-13 * scale;
    let mut h = (u1 - u) / 16.0;
    while u < u1 {
        h = h.min(u1 - u);
        let (yn, vn, err) = ck45_step(y, v, h, q);
        if err <= tol || h <= 1e-14 * u1.max(1.0) {
            u += h;
            y = yn;
            v = vn;
            h *= 0.9 * (tol / err.max(1e-300)).powf(0.2).min(2.0);
        } else {
            h *= 0.9 * (tol / err).powf(0.25).max(0.1);
        }
    }
    (y, v)
}

/// Meridian length by shooting the curvature ODE, independent of quadrature.
///
/// K satisfies K'' = Q'(K)/2 with Q(K) = -(1/3)(K-k0)(K-k1)(K+k0+k1).
/// Starting from K(0) = k0, K'(0) = 0 (a regular point: K''(0) < 0), the
/// solution falls to the turning point K = k1 where K' vanishes again; the
/// arc length of that fall is the football's meridian length.
pub fn ode_meridian_length(k0: f64, k1: f64) -> f64 {
    assert!(k0 > k1, "shooting oracle needs a genuine curvature gap");
    let s = k0 + k1;
    let q = move |k: f64| -> f64 {
        -((k - k1) * (k + s) + (k - k0) * (k + s) + (k - k0) * (k - k1)) / 6.0
    };
    let scale = k0.abs().max(k1.abs());

    // March until K' turns positive past the far turning point.
    let mut u = 0.0;
    let mut y = k0;
    let mut v = 0.0;
    let guess = std::f64::consts::PI / ((2.0 * k1 + k0) / 3.0).sqrt();
    let mut h = guess / 256.0;
    let tol = 1e-13 * scale;
    let (mut pu, mut py, mut pv);
    loop {
        let (yn, vn, err) = ck45_step(y, v, h, q);
        if err <= tol {
            pu = u;
            py = y;
            pv = v;
            u += h;
            y = yn;
            v = vn;
            h *= 0.9 * (tol / err.max(1e-300)).powf(0.2).min(2.0);
            if v >= 0.0 && u > guess / 64.0 {
                break;
            }
            assert!(u < 20.0 * guess, "turning point never reached");
        } else {
            h *= 0.9 * (tol / err).powf(0.25).max(0.1);
        }
    }

    // Bisect for the K' upcrossing inside [pu, u], re-integrating from the
    // bracket start each probe so the result carries full step accuracy.
    let (mut lo, mut hi) = (pu, u);
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        let (_, vm) = ck45_to(pu, py, pv, mid, scale, q);
        if vm < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-13 * guess {
            break;
        }
    }
    0.5 * (lo + hi)
}

/// A random valid spec with a curvature gap bounded away from degenerate.
pub fn random_spec<R: Rng>(rng: &mut R) -> FootballSpec {
    let beta = rng.gen_range(0.15..2.5);
    let alpha = beta * rng.gen_range(1.05..4.0);
    let area = rng.gen_range(1.5..50.0);
    FootballSpec::new(alpha, beta, area).unwrap()
}

/// A random positive rational with denominator at most `max_den`.
pub fn random_rat<R: Rng>(rng: &mut R, max_num: i64, max_den: i64) -> Rat {
    rat(rng.gen_range(1..=max_num), rng.gen_range(1..=max_den))
}

/// A random spec with exactly representable rational angles and a strict
/// gap alpha > beta, returned alongside the rationals for exact arithmetic.
pub fn random_rational_spec<R: Rng>(rng: &mut R) -> (Rat, Rat, FootballSpec) {
    let beta = rat(rng.gen_range(3..=50), 20);
    let ratio = rat(rng.gen_range(21..=80), 20);
    let alpha = &beta * &ratio;
    let area = rng.gen_range(1.5..50.0);
    let spec = FootballSpec::new(rat_to_f64(&alpha), rat_to_f64(&beta), area).unwrap();
    (alpha, beta, spec)
}

pub fn rat_to_f64(r: &Rat) -> f64 {
    hcmu::rational::to_f64(r)
}

/// A random admissible spherical angle problem: one to three integer saddle
/// angles in 2..=5 and up to four non-saddle angles below 2, redrawn until
/// the surplus is nonnegative. Keeping non-saddle angles under 2 guarantees
/// the planner's ratio constraint holds, so every draw is realizable.
pub fn random_problem<R: Rng>(rng: &mut R) -> AngleProblem {
    loop {
        let n_saddle = rng.gen_range(1..=3usize);
        let n_rest = rng.gen_range(0..=4usize);
        let mut angles = Vec::new();
        let mut saddles = Vec::new();
        for _ in 0..n_saddle {
            saddles.push(angles.len());
            angles.push(rat_int(rng.gen_range(2..=5i64)));
        }
        for _ in 0..n_rest {
            let q = rng.gen_range(2..=24i64);
            angles.push(rat(rng.gen_range(1..=(2 * q - 1)), q));
        }
        let base_area = rng.gen_range(5.0..30.0);
        let problem = AngleProblem::new(2, angles, saddles.into_iter().collect(), base_area)
            .expect("generator emits well-formed problems");
        if hcmu::check_obstruction(&problem).is_admissible() {
            return problem;
        }
    }
}
