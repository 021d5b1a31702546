//! Independent verification of an assembled gluing graph.
//!
//! The checks cross-examine three layers that are produced by different
//! code paths: the exact rational layer (angle sums, labels, Euler counts),
//! the spec layer (compatibility proportions, shared curvature extremes),
//! and the sampled layer (meridian lengths and the pointwise warp ratio law
//! along every seam).

use super::graph::{compatibility_residual, GluingGraph};
use super::AngleProblem;
use crate::football::{curvature_extremes, FootballProfile};
use crate::rational::{to_f64, Rat};
use crate::report::{Check, Tolerances, VerificationReport};
use num::One;
use std::collections::BTreeMap;

/// Check names emitted by [`verify_assembly`], in report order.
pub mod assembly_checks {
    pub const COMPATIBILITY: &str = "gluing_compatibility";
    pub const EXTREMES: &str = "shared_curvature_extremes";
    pub const LENGTH: &str = "meridian_length";
    pub const WARP_RATIO: &str = "warp_ratio_law";
    pub const VERTEX_ANGLES: &str = "vertex_angle_sums";
    pub const EULER: &str = "euler_characteristic";
    pub const INDEX: &str = "index_formula";
}

/// Verifies an assembled graph against its problem and solved profiles.
///
/// Emits, in order: `gluing_compatibility` (per-seam angle/area
/// proportions), `shared_curvature_extremes`, `meridian_length`,
/// `warp_ratio_law` (pointwise along every seam), `vertex_angle_sums`
/// (exact rational bookkeeping of every cone point, including saddle
/// incidences and label coverage), `euler_characteristic` (cell count vs
/// target), and `index_formula` (Poincare-Hopf count vs target). The last
/// three are exact: their residual is a violation count with tolerance 0.
pub fn verify_assembly(
    graph: &GluingGraph,
    problem: &AngleProblem,
    profiles: &[FootballProfile],
    tol: &Tolerances,
) -> VerificationReport {
    let mut rep = VerificationReport::new();
    let nodes = &graph.footballs;

    // Seam-level compatibility of the float specs.
    let mut compat = 0.0f64;
    for e in &graph.edges {
        compat = compat.max(compatibility_residual(
            &nodes[e.a.0].spec,
            &nodes[e.b.0].spec,
        ));
    }
    rep.push(Check::new(assembly_checks::COMPATIBILITY, compat, tol.exact_rel));

    // All footballs must produce the same curvature extremes.
    let e0 = curvature_extremes(&nodes[0].spec);
    let kappa = e0.k_max().abs().max(e0.k_min().abs());
    let mut extremes = 0.0f64;
    for node in nodes.iter() {
        let e = curvature_extremes(&node.spec);
        extremes = extremes
            .max((e.k_max() - e0.k_max()).abs() / kappa)
            .max((e.k_min() - e0.k_min()).abs() / kappa);
    }
    rep.push(Check::new(assembly_checks::EXTREMES, extremes, tol.exact_rel));

    // Profile-dependent checks need one profile per node, solved from the
    // node's own spec.
    let profiles_match = profiles.len() == nodes.len()
        && profiles
            .iter()
            .zip(nodes)
            .all(|(p, node)| p.spec == node.spec && p.samples.len() >= 2);
    if profiles_match {
        let l0 = profiles[0].length;
        let length = profiles
            .iter()
            .map(|p| (p.length - l0).abs() / l0)
            .fold(0.0, f64::max);
        rep.push(Check::new(assembly_checks::LENGTH, length, tol.length_rel));

        let mut ratio = 0.0f64;
        let mut grids_match = true;
        for e in &graph.edges {
            let (pa, pb) = (&profiles[e.a.0], &profiles[e.b.0]);
            if pa.samples.len() != pb.samples.len() {
                grids_match = false;
                break;
            }
            let (aa, ab) = (pa.spec.alpha(), pb.spec.alpha());
            let fa_max = pa.samples.iter().map(|s| s.f).fold(0.0, f64::max);
            let fb_max = pb.samples.iter().map(|s| s.f).fold(0.0, f64::max);
            let scale = (ab * fa_max).max(aa * fb_max);
            for (sa, sb) in pa.samples.iter().zip(&pb.samples) {
                let defect = (ab * sa.f - aa * sb.f).abs() / scale;
                let grid = (sa.u - sb.u).abs() / l0;
                ratio = ratio.max(defect).max(grid);
            }
        }
        rep.push(if grids_match {
            Check::new(assembly_checks::WARP_RATIO, ratio, tol.ratio_rel)
        } else {
            Check::structural_failure(assembly_checks::WARP_RATIO, tol.ratio_rel)
        });
    } else {
        rep.push(Check::structural_failure(
            assembly_checks::LENGTH,
            tol.length_rel,
        ));
        rep.push(Check::structural_failure(
            assembly_checks::WARP_RATIO,
            tol.ratio_rel,
        ));
    }

    // Exact bookkeeping of every cone point.
    let mut violations = 0u32;
    let angles = problem.angles();
    let mut saddle_label_counts: BTreeMap<usize, u32> = BTreeMap::new();
    for v in &graph.saddles {
        if v.incident.len() as u64 != 2 * v.angle {
            violations += 1;
        }
        match v.label {
            Some(i) => {
                *saddle_label_counts.entry(i).or_default() += 1;
                let prescribed_ok = problem.is_saddle(i)
                    && angles.get(i).is_some_and(|a| *a == Rat::from_integer(v.angle.into()));
                if !prescribed_ok {
                    violations += 1;
                }
            }
            None => violations += 1,
        }
    }
    let mut extremal_label_counts: BTreeMap<usize, u32> = BTreeMap::new();
    for v in graph.min_vertices.iter().chain(&graph.max_vertices) {
        match v.label {
            Some(i) => {
                *extremal_label_counts.entry(i).or_default() += 1;
                let prescribed_ok =
                    !problem.is_saddle(i) && angles.get(i).is_some_and(|a| *a == v.angle);
                if !prescribed_ok {
                    violations += 1;
                }
            }
            None => {
                // An unlabeled extremal class must be a smooth point.
                if !v.angle.is_one() {
                    violations += 1;
                }
            }
        }
    }
    // Every prescribed angle must be realized exactly once.
    for i in 0..angles.len() {
        let count = if problem.is_saddle(i) {
            saddle_label_counts.get(&i).copied().unwrap_or(0)
        } else {
            extremal_label_counts.get(&i).copied().unwrap_or(0)
        };
        if count != 1 {
            violations += 1;
        }
    }
    // Node self-consistency: the float spec must be derived from the exact
    // angles (bitwise, since both sides compute the same products).
    for node in nodes {
        if node.spec.alpha() != to_f64(&node.x)
            || node.spec.beta() != to_f64(&node.y)
            || node.spec.area() != graph.base_area * to_f64(&node.area_factor)
        {
            violations += 1;
        }
    }
    rep.push(Check::new(
        assembly_checks::VERTEX_ANGLES,
        violations as f64,
        0.0,
    ));

    rep.push(Check::new(
        assembly_checks::EULER,
        (graph.combinatorial_euler_char() - graph.euler_char_target).abs() as f64,
        0.0,
    ));
    rep.push(Check::new(
        assembly_checks::INDEX,
        (graph.index_formula_euler_char() - graph.euler_char_target).abs() as f64,
        0.0,
    ));

    rep
}
