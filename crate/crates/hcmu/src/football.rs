//! Rotationally symmetric HCMU footballs.
//!
//! A football is the metric g = du^2 + f(u)^2 dtheta^2 on the 2-sphere with
//! exactly two singular points, cone angles 2*pi*alpha at the curvature
//! maximum (u = 0) and 2*pi*beta at the minimum (u = l), alpha >= beta. The
//! triple (alpha, beta, area) determines the metric. Its Gauss curvature K
//! satisfies K' = c*f for a constant c <= 0, and the first integral of
//! K''' + K*K' = 0 factors as
//!
//! ```text
//! K'^2 = -(1/3) (K - K0) (K - K1) (K + K0 + K1),
//! ```
//!
//! with K0 = K(0) the maximum and K1 = K(l) the minimum. Everything in this
//! module flows from that cubic: closed-form extremes, arc length by
//! quadrature after a substitution that removes the square-root endpoint
//! singularities, sampled profiles, and an independent residual verifier.

use crate::findiff::fd_weights;
use crate::quad::integrate_to_tolerance;
use crate::report::{Check, Tolerances, VerificationReport};
use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_PI_2, PI};

/// Relative gap under which (K0, K1) are treated as equal and the profile is
/// solved on the constant-curvature branch.
pub const DEGENERATE_GAP: f64 = 1e-9;

/// Internal relative tolerance for the length quadrature.
const QUAD_REL_TOL: f64 = 1e-12;

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum FootballError {
    #[error("football angles and area must be positive and finite (alpha={alpha}, beta={beta}, area={area})")]
    InvalidSpec { alpha: f64, beta: f64, area: f64 },
    #[error("curvature extremes are not realizable by a football (k_max={k_max}, k_min={k_min}, c={c}): need k_max > 0, k_max >= k_min, 2*k_min + k_max > 0, c < 0 exactly when k_max > k_min")]
    InvalidExtremes { k_max: f64, k_min: f64, c: f64 },
    #[error("a profile needs at least 3 samples, got {0}")]
    TooFewSamples(usize),
    #[error("length quadrature did not converge to relative {rel_tol} on [{a}, {b}] (last delta {rel_delta})")]
    QuadratureDivergence {
        a: f64,
        b: f64,
        rel_tol: f64,
        rel_delta: f64,
    },
}

/// The data defining one football: cone angles in units of 2*pi and the total
/// area. Construction normalizes to alpha >= beta and records whether the
/// inputs were swapped.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FootballSpec {
    alpha: f64,
    beta: f64,
    area: f64,
    swapped: bool,
}

impl FootballSpec {
    pub fn new(alpha: f64, beta: f64, area: f64) -> Result<Self, FootballError> {
        let ok = |v: f64| v.is_finite() && v > 0.0;
        if !ok(alpha) || !ok(beta) || !ok(area) {
            return Err(FootballError::InvalidSpec { alpha, beta, area });
        }
        let swapped = beta > alpha;
        let (alpha, beta) = if swapped { (beta, alpha) } else { (alpha, beta) };
        Ok(FootballSpec {
            alpha,
            beta,
            area,
            swapped,
        })
    }

    /// Cone angle at the curvature maximum, in units of 2*pi.
    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// Cone angle at the curvature minimum, in units of 2*pi.
    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn area(&self) -> f64 {
        self.area
    }

    /// True when the constructor swapped the inputs into canonical order.
    pub fn swapped(&self) -> bool {
        self.swapped
    }
}

/// Extremes of the Gauss curvature along a football, plus the constant of
/// proportionality c in K' = c*f.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurvatureExtremes {
    k_max: f64,
    k_min: f64,
    c: f64,
}

impl CurvatureExtremes {
    /// Validates the football realizability constraints: k_max > 0,
    /// k_max >= k_min, 2*k_min + k_max > 0 (equivalently beta > 0), and the
    /// sign of c tied to whether the curvature is constant.
    pub fn new(k_max: f64, k_min: f64, c: f64) -> Result<Self, FootballError> {
        let bad = || FootballError::InvalidExtremes { k_max, k_min, c };
        if !(k_max.is_finite() && k_min.is_finite() && c.is_finite()) {
            return Err(bad());
        }
        if !(k_max > 0.0) || k_max < k_min || !(2.0 * k_min + k_max > 0.0) {
            return Err(bad());
        }
        if k_max > k_min && !(c < 0.0) {
            return Err(bad());
        }
        if k_max == k_min && c != 0.0 {
            return Err(bad());
        }
        Ok(CurvatureExtremes { k_max, k_min, c })
    }

    pub fn k_max(&self) -> f64 {
        self.k_max
    }

    pub fn k_min(&self) -> f64 {
        self.k_min
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    /// Relative curvature gap, the quantity that routes the solver to the
    /// constant-curvature branch when tiny.
    pub fn relative_gap(&self) -> f64 {
        (self.k_max - self.k_min) / (self.k_max.abs() + self.k_min.abs())
    }

    pub fn is_constant(&self) -> bool {
        self.relative_gap() < DEGENERATE_GAP
    }
}

/// Closed-form curvature extremes of the football (alpha, beta, A):
///
/// ```text
/// K0 = (4*pi/A) (2*alpha - beta),   K1 = (4*pi/A) (2*beta - alpha),
/// c  = 2*pi (K1 - K0) / A.
/// ```
pub fn curvature_extremes(spec: &FootballSpec) -> CurvatureExtremes {
    let scale = 4.0 * PI / spec.area;
    let k_max = scale * (2.0 * spec.alpha - spec.beta);
    let k_min = scale * (2.0 * spec.beta - spec.alpha);
    let c = 2.0 * PI * (k_min - k_max) / spec.area;
    CurvatureExtremes { k_max, k_min, c }
}

/// Inverts the extremes map for a given area:
///
/// ```text
/// alpha = A (2*K0 + K1) / (12*pi),   beta = A (2*K1 + K0) / (12*pi).
/// ```
///
/// Rejects extremes no football produces (see [`CurvatureExtremes::new`]).
pub fn angles_from_extremes(
    extremes: &CurvatureExtremes,
    area: f64,
) -> Result<(f64, f64), FootballError> {
    if !(area.is_finite() && area > 0.0) {
        return Err(FootballError::InvalidSpec {
            alpha: f64::NAN,
            beta: f64::NAN,
            area,
        });
    }
    // Revalidate: the struct may have been deserialized.
    CurvatureExtremes::new(extremes.k_max, extremes.k_min, extremes.c)?;
    let scale = area / (12.0 * PI);
    let alpha = scale * (2.0 * extremes.k_max + extremes.k_min);
    let beta = scale * (2.0 * extremes.k_min + extremes.k_max);
    Ok((alpha, beta))
}

/// One sampled point of a profile.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProfileSample {
    /// Arc length from the curvature maximum.
    pub u: f64,
    /// Gauss curvature at u.
    pub k: f64,
    /// Warp factor f(u) (the radius of the latitude circle at u).
    pub f: f64,
}

/// A solved football profile: meridian samples from the curvature maximum
/// (u = 0) to the minimum (u = length).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FootballProfile {
    pub spec: FootballSpec,
    pub extremes: CurvatureExtremes,
    pub length: f64,
    pub samples: Vec<ProfileSample>,
}

/// Integrand of the arc-length quadrature after the substitution
/// K = K1 + (K0 - K1) sin^2(phi): du/dphi = 2 / sqrt((K + K0 + K1)/3).
/// Smooth on [0, pi/2] because 2*K1 + K0 > 0 for every football.
fn arc_integrand(k0: f64, k1: f64) -> impl Fn(f64) -> f64 {
    let sum = k0 + k1;
    move |phi: f64| {
        let s = phi.sin();
        let k = k1 + (k0 - k1) * s * s;
        2.0 / ((k + sum) / 3.0).sqrt()
    }
}

/// Meridian length between the two singular points.
///
/// Constant curvature gives the closed form pi/sqrt(K0); otherwise the
/// substituted integrand is integrated by order-doubling quadrature.
pub fn geodesic_length(extremes: &CurvatureExtremes) -> Result<f64, FootballError> {
    CurvatureExtremes::new(extremes.k_max, extremes.k_min, extremes.c)?;
    if extremes.is_constant() {
        return Ok(PI / extremes.k_max.sqrt());
    }
    let out = integrate_to_tolerance(
        arc_integrand(extremes.k_max, extremes.k_min),
        0.0,
        FRAC_PI_2,
        QUAD_REL_TOL,
    );
    if !out.converged {
        return Err(FootballError::QuadratureDivergence {
            a: 0.0,
            b: FRAC_PI_2,
            rel_tol: QUAD_REL_TOL,
            rel_delta: out.rel_delta,
        });
    }
    Ok(out.value)
}

/// Solves the profile of `spec` on `n_samples` points.
///
/// The grid is uniform in the substitution angle phi, which clusters samples
/// near both cone points where the curvature flattens out. Samples are
/// ordered by increasing u; u = 0 carries K = k_max and f = 0 exactly, the
/// last sample carries K = k_min, u = length, f = 0 exactly.
pub fn profile_solve(spec: &FootballSpec, n_samples: usize) -> Result<FootballProfile, FootballError> {
    if n_samples < 3 {
        return Err(FootballError::TooFewSamples(n_samples));
    }
    let extremes = curvature_extremes(spec);
    if extremes.is_constant() {
        return Ok(profile_constant(spec, n_samples));
    }
    profile_generic(spec, extremes, n_samples)
}

/// Constant-curvature branch: K == 4*pi*alpha/area, f = (alpha/sqrt(K)) sin(sqrt(K) u).
///
/// Near-degenerate inputs are routed here too; the profile then represents
/// the constant metric of the averaged angle, and its extremes are snapped so
/// the profile is self-consistent.
fn profile_constant(spec: &FootballSpec, n: usize) -> FootballProfile {
    let angle = 0.5 * (spec.alpha + spec.beta);
    let k = 4.0 * PI * angle / spec.area;
    let root = k.sqrt();
    let length = PI / root;
    let amp = angle / root;
    let mut samples = Vec::with_capacity(n);
    for i in 0..n {
        let u = if i == n - 1 {
            length
        } else {
            i as f64 * length / (n - 1) as f64
        };
        let f = if i == 0 || i == n - 1 {
            0.0
        } else {
            amp * (root * u).sin()
        };
        samples.push(ProfileSample { u, k, f });
    }
    FootballProfile {
        spec: *spec,
        extremes: CurvatureExtremes {
            k_max: k,
            k_min: k,
            c: 0.0,
        },
        length,
        samples,
    }
}

fn profile_generic(
    spec: &FootballSpec,
    extremes: CurvatureExtremes,
    n: usize,
) -> Result<FootballProfile, FootballError> {
    let (k0, k1) = (extremes.k_max, extremes.k_min);
    let c_abs = -extremes.c;
    let integrand = arc_integrand(k0, k1);

    // Ascending phi grid; phi = 0 is the curvature minimum, pi/2 the maximum.
    let dphi = FRAC_PI_2 / (n - 1) as f64;
    let phis: Vec<f64> = (0..n)
        .map(|j| if j == n - 1 { FRAC_PI_2 } else { j as f64 * dphi })
        .collect();

    // Per-segment integrals of du/dphi, then suffix sums: u(phi_j) is the
    // integral from phi_j up to pi/2.
    let mut suffix = vec![0.0; n];
    for j in (0..n - 1).rev() {
        let out = integrate_to_tolerance(&integrand, phis[j], phis[j + 1], QUAD_REL_TOL);
        if !out.converged {
            return Err(FootballError::QuadratureDivergence {
                a: phis[j],
                b: phis[j + 1],
                rel_tol: QUAD_REL_TOL,
                rel_delta: out.rel_delta,
            });
        }
        suffix[j] = suffix[j + 1] + out.value;
    }
    let length = suffix[0];

    let gap = k0 - k1;
    let sum = k0 + k1;
    let mut samples = Vec::with_capacity(n);
    for i in 0..n {
        let j = n - 1 - i; // phi index: u increases as phi decreases
        let (k, f) = if j == n - 1 {
            (k0, 0.0)
        } else if j == 0 {
            (k1, 0.0)
        } else {
            let (s, co) = phis[j].sin_cos();
            let k = k1 + gap * s * s;
            // |K'| = gap * sin * cos * sqrt((K + K0 + K1)/3); f = |K'|/|c|.
            let f = gap * s * co * ((k + sum) / 3.0).sqrt() / c_abs;
            (k, f)
        };
        samples.push(ProfileSample {
            u: suffix[j],
            k,
            f,
        });
    }
    Ok(FootballProfile {
        spec: *spec,
        extremes,
        length,
        samples,
    })
}

/// Integrates sampled data by fitting a quadratic through each consecutive
/// sample triple (Simpson generalized to uneven spacing, fourth order on
/// smoothly varying grids). A final unpaired interval falls back to the
/// trapezoid rule.
fn simpson_nonuniform(u: &[f64], f: &[f64]) -> f64 {
    debug_assert_eq!(u.len(), f.len());
    let n = u.len();
    let mut total = 0.0;
    let mut i = 0;
    while i + 2 < n {
        let h1 = u[i + 1] - u[i];
        let h2 = u[i + 2] - u[i + 1];
        let whole = h1 + h2;
        total += whole / 6.0
            * ((2.0 - h2 / h1) * f[i]
                + whole * whole / (h1 * h2) * f[i + 1]
                + (2.0 - h1 / h2) * f[i + 2]);
        i += 2;
    }
    if i + 1 < n {
        total += 0.5 * (u[i + 1] - u[i]) * (f[i] + f[i + 1]);
    }
    total
}

/// Check names emitted by [`verify_football`], in report order.
pub mod football_checks {
    pub const WELL_FORMED: &str = "profile_well_formed";
    pub const EXTREMES: &str = "extremes_consistency";
    pub const CUBIC: &str = "curvature_cubic";
    pub const SLOPE: &str = "slope_proportionality";
    pub const THIRD_ORDER: &str = "third_order_ode";
    pub const WARP: &str = "warp_curvature";
    pub const MONOTONE: &str = "curvature_monotonicity";
    pub const BOUNDARY: &str = "boundary_slopes";
    pub const AREA: &str = "area_identity";
}

/// Independent residual verification of a sampled profile.
///
/// Derivatives are re-taken from the samples with finite differences on the
/// actual (nonuniform) grid, never from the formulas that produced them, so
/// the checks cross a genuinely different computational path:
///
/// 1. the curvature cubic K'^2 + (1/3)(K-K0)(K-K1)(K+K0+K1) = 0,
/// 2. the proportionality K' = c*f,
/// 3. the third-order equation K''' + K*K' = 0,
/// 4. K = -f''/f, checked in the cleared form f'' + K*f (finite at poles),
/// 5. monotonicity (or constancy) of K in u,
/// 6. boundary slopes f'(0) = alpha, f'(l) = -beta,
/// 7. the area identity 2*pi * integral of f du = area.
///
/// Residuals are reported in the natural units of each identity; the
/// stencil tolerances follow the second-order error model C * h^2 with
/// C = `tol.fd_scale` and h the local spacing, times a curvature scale per
/// check, all expressed at the coarsest cell (a residual at a finer cell is
/// weighted up by (h_max/h)^2, so passing means every sample meets its own
/// local budget and reported residuals shrink as h^2 under refinement).
/// Failures are recorded in the report; nothing panics on bad data.
pub fn verify_football(profile: &FootballProfile, tol: &Tolerances) -> VerificationReport {
    let mut rep = VerificationReport::new();
    let s = &profile.samples;
    let n = s.len();
    let ex = &profile.extremes;
    let (k0, k1) = (ex.k_max, ex.k_min);
    let kappa = k0.abs().max(k1.abs()).max((k0 + k1).abs());
    let constant = ex.is_constant();

    // Structural soundness gates the stencil checks: slopes on a broken grid
    // would be meaningless, so they are reported as failed outright.
    let well_formed = n >= 5
        && s.iter().all(|p| p.u.is_finite() && p.k.is_finite() && p.f.is_finite())
        && s.windows(2).all(|w| w[0].u < w[1].u)
        && s[0].u == 0.0
        && s[0].f == 0.0
        && s[n - 1].f == 0.0
        && s[1..n - 1].iter().all(|p| p.f > 0.0);
    rep.push(if well_formed {
        Check::new(football_checks::WELL_FORMED, 0.0, 0.0)
    } else {
        Check::structural_failure(football_checks::WELL_FORMED, 0.0)
    });
    if !well_formed {
        for name in [
            football_checks::EXTREMES,
            football_checks::CUBIC,
            football_checks::SLOPE,
            football_checks::THIRD_ORDER,
            football_checks::WARP,
            football_checks::MONOTONE,
            football_checks::BOUNDARY,
            football_checks::AREA,
        ] {
            rep.push(Check::structural_failure(name, 0.0));
        }
        return rep;
    }

    // Sample ends must carry the stated extremes and the stated length.
    let extremes_residual = ((s[0].k - k0).abs() / kappa)
        .max((s[n - 1].k - k1).abs() / kappa)
        .max((s[n - 1].u - profile.length).abs() / profile.length.abs().max(f64::MIN_POSITIVE));
    rep.push(Check::new(
        football_checks::EXTREMES,
        extremes_residual,
        tol.exact_rel,
    ));

    let us: Vec<f64> = s.iter().map(|p| p.u).collect();
    let ks: Vec<f64> = s.iter().map(|p| p.k).collect();
    let fs: Vec<f64> = s.iter().map(|p| p.f).collect();
    let c = ex.c;
    let (alpha, beta) = (profile.spec.alpha, profile.spec.beta);
    let h_max = us.windows(2).map(|w| w[1] - w[0]).fold(0.0, f64::max);
    let f_max = fs.iter().fold(0.0f64, |a, &b| a.max(b));

    let stencil = |vals: &[f64], lo: usize, hi: usize, at: f64, m: usize| -> f64 {
        let w = fd_weights(at, &us[lo..hi], m);
        w.iter().zip(&vals[lo..hi]).map(|(w, v)| w * v).sum()
    };

    // First derivatives of K at interior samples (3-point).
    let kp: Vec<f64> = (1..n - 1)
        .map(|i| stencil(&ks, i - 1, i + 2, us[i], 1))
        .collect();

    // Per-sample residuals weighted up to the coarsest cell: r * (h_max/h)^2
    // preserves the local C*h^2 criterion while reporting one number.
    let mut cubic_max = 0.0f64;
    let mut slope_max = 0.0f64;
    let mut warp_max = 0.0f64;
    let warp_ref = kappa * kappa * f_max;
    for i in 1..n - 1 {
        let h = (us[i] - us[i - 1]).max(us[i + 1] - us[i]);
        let up = (h_max / h) * (h_max / h);
        let w = kp[i - 1];
        let cubic = w * w + (ks[i] - k0) * (ks[i] - k1) * (ks[i] + k0 + k1) / 3.0;
        cubic_max = cubic_max.max(cubic.abs() * up);
        slope_max = slope_max.max((w - c * fs[i]).abs() * up);
        // The warp stencil's truncation is proportional to f on the stencil,
        // which decays to 0 at the poles; scale the local budget by the
        // stencil's largest f so end faults stay visible.
        let fpp = stencil(&fs, i - 1, i + 2, us[i], 2);
        let f_stencil = fs[i - 1].max(fs[i]).max(fs[i + 1]);
        warp_max = warp_max.max((fpp + ks[i] * fs[i]).abs() * up * (f_max / f_stencil));
    }
    rep.push(Check::new(
        football_checks::CUBIC,
        cubic_max,
        tol.fd_scale * h_max * h_max * kappa.powi(4),
    ));
    rep.push(Check::new(
        football_checks::SLOPE,
        slope_max,
        tol.fd_scale * h_max * h_max * kappa.powf(2.5),
    ));

    // Third derivative needs five points; check where a centered window fits.
    let mut third_max = 0.0f64;
    for i in 2..n.saturating_sub(2) {
        let h = (us[i + 2] - us[i]).max(us[i] - us[i - 2]) * 0.5;
        let up = (h_max / h) * (h_max / h);
        let kppp = stencil(&ks, i - 2, i + 3, us[i], 3);
        third_max = third_max.max((kppp + ks[i] * kp[i - 1]).abs() * up);
    }
    rep.push(Check::new(
        football_checks::THIRD_ORDER,
        third_max,
        tol.fd_scale * h_max * h_max * kappa.powf(3.5),
    ));
    rep.push(Check::new(
        football_checks::WARP,
        warp_max,
        tol.fd_scale * h_max * h_max * warp_ref,
    ));

    // Monotone decrease of K for a genuine gap, constancy otherwise. Ties at
    // adjacent samples would slip through a <= comparison, but exact ties
    // cannot occur on the solver's grid; perturbations show up as positive
    // residuals.
    let (mono_residual, mono_tol) = if constant {
        (
            ks.iter().map(|k| (k - k0).abs()).fold(0.0, f64::max),
            tol.exact_rel * kappa,
        )
    } else {
        (
            ks.windows(2).map(|w| w[1] - w[0]).fold(f64::MIN, f64::max).max(0.0),
            0.0,
        )
    };
    rep.push(Check::new(football_checks::MONOTONE, mono_residual, mono_tol));

    // One-sided 3-point slopes at the two poles.
    let fp0 = stencil(&fs, 0, 3, us[0], 1);
    let fpl = stencil(&fs, n - 3, n, us[n - 1], 1);
    let span0 = us[2] - us[0];
    let spanl = us[n - 1] - us[n - 3];
    let boundary = (fp0 - alpha).abs().max((fpl + beta).abs());
    rep.push(Check::new(
        football_checks::BOUNDARY,
        boundary,
        tol.fd_scale * span0.max(spanl).powi(2) * kappa * (alpha + beta),
    ));

    // Area identity by independent integration of the samples. The flat
    // relative tolerance certifies the identity on fine grids; the
    // fourth-order model term keeps coarse grids inside the same error
    // regime as the stencil checks.
    let area = 2.0 * PI * simpson_nonuniform(&us, &fs);
    let area_model = tol.fd_scale
        * h_max.powi(4)
        * (kappa * kappa * f_max + kappa.powf(1.5) * (alpha + beta))
        * profile.length
        / 30.0;
    rep.push(Check::new(
        football_checks::AREA,
        (area - profile.spec.area).abs(),
        (tol.area_rel * profile.spec.area).max(area_model),
    ));

    rep
}
