//! Rotationally symmetric HCMU metrics on the 2-sphere.
//!
//! The building block is the football: a metric du^2 + f(u)^2 dtheta^2 with
//! two conical singularities whose curvature satisfies K' = c*f. Prescribing
//! cone angles with integer saddle points reduces, through an exact rational
//! planning step, to gluing finitely many footballs along meridians. This
//! crate computes football profiles, plans and assembles gluings, and
//! verifies every claimed identity numerically from the sampled data alone.
//!
//! Organization:
//!
//! - [`football`]: single-football solver and residual verifier,
//! - [`assembly`]: admissibility arithmetic, angle plans, gluing graphs and
//!   their verifier,
//! - [`rational`]: exact angle arithmetic helpers,
//! - [`report`]: check/report plumbing shared by the verifiers,
//! - [`quad`], [`findiff`]: quadrature and finite-difference kernels.

pub mod assembly;
pub mod findiff;
pub mod football;
pub mod quad;
pub mod rational;
pub mod report;

pub use assembly::graph::{
    assemble_graph, build_gluing_graph, check_compatibility, compatibility_residual,
    solve_profiles, ExtremalVertex, FootballNode, GluingGraph, MeridianId, SaddleCut,
    SaddleVertex, Seam, SeamSpan,
};
pub use assembly::{
    assembly_checks, check_obstruction, plan_total_area, solve_angle_plan, verify_assembly,
    Admissibility, AnglePlan, AngleProblem, AssemblyError, PlanCase, SaddleBlock,
};
pub use football::{
    angles_from_extremes, curvature_extremes, geodesic_length, profile_solve, verify_football,
    CurvatureExtremes, FootballError, FootballProfile, FootballSpec, ProfileSample,
};
pub use rational::{parse_rat, rat, rat_int, Rat};
pub use report::{Check, Tolerances, VerificationReport};
