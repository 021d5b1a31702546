//! From prescribed cone angles to a gluing of footballs.
//!
//! The input is a list of cone angles (units of 2*pi) on a surface of a given
//! Euler characteristic, with a subset marked as saddle points of the
//! curvature; saddle angles must be integers >= 2. Realizability by an HCMU
//! metric reduces to exact integer arithmetic: the angle surplus
//!
//! ```text
//! s = sum of saddle angles + euler_char - (number of angles)
//! ```
//!
//! must be nonnegative and the surface must be the sphere. Construction then
//! picks one football per remaining angle plus s unit-angle fillers, all
//! mutually gluing-compatible, chained through the saddles. Everything in
//! this module is exact rational arithmetic; floats only appear when the
//! footballs are eventually solved.

pub mod graph;
mod verify;

pub use verify::{assembly_checks, verify_assembly};

use crate::football::FootballError;
use crate::rational::{format_rat, is_integer, rat, rat_int, to_f64, Rat};
use num::{One, Signed, ToPrimitive};
use serde::Serialize;
use std::collections::BTreeSet;

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum AssemblyError {
    #[error("malformed angle problem: {0}")]
    Malformed(String),
    #[error("not admissible: {reason}")]
    NotAdmissible { surplus: i64, reason: String },
    #[error("no single-minimum assembly exists: the smallest non-saddle angle {alpha_n} is not smaller than s + (sum of the other non-saddle angles) = {denom}, so the minimum cannot absorb the leftover angle")]
    RatioConstraint { alpha_n: String, denom: String },
    #[error("footballs are not gluing-compatible: {0}")]
    Incompatible(String),
    #[error("invalid gluing graph: {0}")]
    Graph(String),
    #[error(transparent)]
    Football(#[from] FootballError),
}

/// A prescription of conical singularities on a closed surface.
///
/// Angles are exact rationals in units of 2*pi. `saddle_indices` marks which
/// entries are saddle points of the curvature; those angles must be integers
/// >= 2. `base_area` is the area assigned to a unit of cone angle when the
/// plan is turned into concrete footballs.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AngleProblem {
    euler_char: i64,
    #[serde(with = "crate::rational::rat_vec_string")]
    angles: Vec<Rat>,
    saddle_indices: BTreeSet<usize>,
    base_area: f64,
}

impl AngleProblem {
    pub fn new(
        euler_char: i64,
        angles: Vec<Rat>,
        saddle_indices: BTreeSet<usize>,
        base_area: f64,
    ) -> Result<Self, AssemblyError> {
        if angles.is_empty() {
            return Err(AssemblyError::Malformed("no angles prescribed".into()));
        }
        for (i, a) in angles.iter().enumerate() {
            if !a.is_positive() {
                return Err(AssemblyError::Malformed(format!(
                    "angle {} is {}, but cone angles must be positive",
                    i,
                    format_rat(a)
                )));
            }
        }
        for &i in &saddle_indices {
            let Some(a) = angles.get(i) else {
                return Err(AssemblyError::Malformed(format!(
                    "saddle index {} is out of range for {} angles",
                    i,
                    angles.len()
                )));
            };
            if !is_integer(a) || a < &rat_int(2) {
                return Err(AssemblyError::Malformed(format!(
                    "saddle angle {} is {}, but saddle angles must be integers >= 2",
                    i,
                    format_rat(a)
                )));
            }
        }
        if !(base_area.is_finite() && base_area > 0.0) {
            return Err(AssemblyError::Malformed(format!(
                "base area must be positive and finite, got {base_area}"
            )));
        }
        Ok(AngleProblem {
            euler_char,
            angles,
            saddle_indices,
            base_area,
        })
    }

    pub fn euler_char(&self) -> i64 {
        self.euler_char
    }

    pub fn angles(&self) -> &[Rat] {
        &self.angles
    }

    pub fn saddle_indices(&self) -> &BTreeSet<usize> {
        &self.saddle_indices
    }

    pub fn base_area(&self) -> f64 {
        self.base_area
    }

    pub fn is_saddle(&self, i: usize) -> bool {
        self.saddle_indices.contains(&i)
    }

    /// Non-saddle angles with their problem indices, in index order.
    pub fn non_saddles(&self) -> Vec<(usize, Rat)> {
        self.angles
            .iter()
            .enumerate()
            .filter(|(i, _)| !self.is_saddle(*i))
            .map(|(i, a)| (i, a.clone()))
            .collect()
    }

    /// Exact sum of the saddle angles as an integer.
    pub fn saddle_angle_sum(&self) -> i64 {
        self.saddle_indices
            .iter()
            .map(|&i| self.angles[i].to_integer().to_i64().expect("saddle angles are small integers"))
            .sum()
    }
}

/// Outcome of the exact admissibility test.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum Admissibility {
    Admissible { surplus: u64 },
    Inadmissible { surplus: i64, reason: String },
}

impl Admissibility {
    pub fn is_admissible(&self) -> bool {
        matches!(self, Admissibility::Admissible { .. })
    }

    pub fn surplus(&self) -> i64 {
        match self {
            Admissibility::Admissible { surplus } => *surplus as i64,
            Admissibility::Inadmissible { surplus, .. } => *surplus,
        }
    }
}

/// Exact obstruction test: the problem is realizable iff the surface is the
/// sphere and the angle surplus
///
/// ```text
/// s = (sum of saddle angles) + euler_char - (number of angles)
/// ```
///
/// is nonnegative. The surplus is reported either way; an inadmissible
/// problem carries the reason.
pub fn check_obstruction(problem: &AngleProblem) -> Admissibility {
    let surplus = problem.saddle_angle_sum() + problem.euler_char - problem.angles.len() as i64;
    if surplus < 0 {
        return Admissibility::Inadmissible {
            surplus,
            reason: format!(
                "angle surplus is {surplus}; each prescribed angle beyond the saddle budget needs a football, so the surplus must be nonnegative"
            ),
        };
    }
    if problem.euler_char != 2 {
        return Admissibility::Inadmissible {
            surplus,
            reason: format!(
                "euler characteristic is {}, but footballs only assemble into spheres (surplus would be {surplus})",
                problem.euler_char
            ),
        };
    }
    Admissibility::Admissible {
        surplus: surplus as u64,
    }
}

/// Which branch of the construction a plan used.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PlanCase {
    /// Zero surplus: every football carries one prescribed non-saddle angle.
    SurplusZero,
    /// Positive surplus: s extra unit-angle footballs fill the saddle cycles.
    SurplusPositive,
    /// No non-saddle angles at all: every football is a unit-angle filler
    /// and the shared minimum is a smooth point.
    MinimalExceptional,
}

/// One saddle's slice of the football chain.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SaddleBlock {
    /// Saddle cone angle (an integer >= 2).
    pub angle: u64,
    /// Index of this saddle in the problem's angle list.
    pub label: usize,
    /// Plan football ids glued cyclically at this saddle; consecutive blocks
    /// share their boundary football.
    pub footballs: Vec<usize>,
}

/// Exact football decomposition of an admissible problem.
///
/// Football k has cone angle `x[k]` at its curvature maximum and `y[k]` at
/// its minimum, and area `base_area * x[k]`. All minima are glued into one
/// point of total angle sum(y); `x_label[k]` says which problem angle the
/// maximum of football k realizes (None for unit-angle fillers), `min_label`
/// which problem angle the shared minimum realizes (None when it is smooth).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnglePlan {
    pub case: PlanCase,
    /// Number of unit-angle filler footballs.
    pub s: u64,
    pub n_footballs: usize,
    #[serde(with = "crate::rational::rat_vec_string")]
    pub x: Vec<Rat>,
    #[serde(with = "crate::rational::rat_vec_string")]
    pub y: Vec<Rat>,
    pub x_label: Vec<Option<usize>>,
    pub min_label: Option<usize>,
    /// Common ratio x[k]/y[k] > 1, shared by all footballs in the plan.
    #[serde(with = "crate::rational::rat_string")]
    pub ratio: Rat,
    pub saddle_blocks: Vec<SaddleBlock>,
}

/// Splits an admissible problem into gluing-compatible footballs, exactly.
///
/// With saddle angles a_1..a_j, the chain uses N = sum(a_i) - (j - 1)
/// footballs: the first saddle's cycle takes a_1 of them, each later cycle
/// reuses one football of the previous block. Non-saddle angles become the
/// maxima x_k (plus s unit fillers); every minimum gets y_k = x_k * a_n / d,
/// where a_n is the smallest non-saddle angle and d = s + (sum of the other
/// non-saddle angles), so the glued minima sum to exactly a_n. This needs
/// d > a_n; otherwise no assembly with a single minimum exists and
/// [`AssemblyError::RatioConstraint`] reports the failure. With no
/// non-saddle angles at all, the N fillers share a smooth minimum
/// (y_k = 1/N).
pub fn solve_angle_plan(problem: &AngleProblem) -> Result<AnglePlan, AssemblyError> {
    let s = match check_obstruction(problem) {
        Admissibility::Admissible { surplus } => surplus,
        Admissibility::Inadmissible { surplus, reason } => {
            return Err(AssemblyError::NotAdmissible { surplus, reason })
        }
    };
    if problem.saddle_indices.is_empty() {
        return Err(AssemblyError::Malformed(
            "no saddle angles: a problem with two cone points and no saddles is a single football; construct it directly with a football spec".into(),
        ));
    }

    let j = problem.saddle_indices.len() as i64;
    let n_footballs = (problem.saddle_angle_sum() - (j - 1)) as usize;
    let non_saddles = problem.non_saddles();

    let (case, x, x_label, y, min_label, ratio) = if non_saddles.is_empty() {
        // Only saddles prescribed: n_footballs equals s + 1 unit fillers
        // whose minima close up into one smooth point.
        let n = n_footballs as i64;
        let x = vec![Rat::one(); n_footballs];
        let y = vec![rat(1, n); n_footballs];
        (
            PlanCase::MinimalExceptional,
            x,
            vec![None; n_footballs],
            y,
            None,
            rat_int(n),
        )
    } else {
        // Smallest non-saddle angle, ties resolved to the lowest index.
        let (pos, _) = non_saddles
            .iter()
            .enumerate()
            .min_by(|(_, (_, a)), (_, (_, b))| a.cmp(b))
            .expect("non_saddles is nonempty");
        let (min_idx, alpha_n) = non_saddles[pos].clone();
        let rest: Vec<(usize, Rat)> = non_saddles
            .iter()
            .enumerate()
            .filter(|(p, _)| *p != pos)
            .map(|(_, e)| e.clone())
            .collect();

        let sum_rest: Rat = rest.iter().map(|(_, a)| a.clone()).sum();
        let denom = rat_int(s as i64) + &sum_rest;
        if denom <= alpha_n {
            return Err(AssemblyError::RatioConstraint {
                alpha_n: format_rat(&alpha_n),
                denom: format_rat(&denom),
            });
        }

        let mut x: Vec<Rat> = rest.iter().map(|(_, a)| a.clone()).collect();
        let mut x_label: Vec<Option<usize>> = rest.iter().map(|(i, _)| Some(*i)).collect();
        x.extend(std::iter::repeat_with(Rat::one).take(s as usize));
        x_label.extend(std::iter::repeat(None).take(s as usize));

        let scale = &alpha_n / &denom;
        let y: Vec<Rat> = x.iter().map(|xk| xk * &scale).collect();
        let ratio = &denom / &alpha_n;
        let case = if s == 0 {
            PlanCase::SurplusZero
        } else {
            PlanCase::SurplusPositive
        };
        (case, x, x_label, y, Some(min_idx), ratio)
    };

    debug_assert_eq!(x.len(), n_footballs);
    debug_assert_eq!(
        x.iter().sum::<Rat>() * y[0].clone() / x[0].clone(),
        y.iter().sum::<Rat>(),
    );

    // Chain the footballs through the saddles in index order: the first
    // saddle's cycle takes the first `angle` footballs, each later cycle
    // starts from the previous block's last football.
    let mut saddle_blocks = Vec::with_capacity(problem.saddle_indices.len());
    let mut next = 0usize;
    for &label in &problem.saddle_indices {
        let angle = problem.angles[label]
            .to_integer()
            .to_u64()
            .expect("validated saddle angle");
        let mut footballs = Vec::with_capacity(angle as usize);
        if let Some(prev) = saddle_blocks
            .last()
            .map(|b: &SaddleBlock| *b.footballs.last().expect("blocks are nonempty"))
        {
            footballs.push(prev);
        }
        while footballs.len() < angle as usize {
            footballs.push(next);
            next += 1;
        }
        saddle_blocks.push(SaddleBlock {
            angle,
            label,
            footballs,
        });
    }
    debug_assert_eq!(next, n_footballs);

    Ok(AnglePlan {
        case,
        s: if matches!(case, PlanCase::MinimalExceptional) {
            n_footballs as u64
        } else {
            s
        },
        n_footballs,
        x,
        y,
        x_label,
        min_label,
        ratio,
        saddle_blocks,
    })
}

/// Total metric area of the planned surface: base_area * sum(x).
pub fn plan_total_area(plan: &AnglePlan, problem: &AngleProblem) -> f64 {
    let total: Rat = plan.x.iter().sum();
    problem.base_area() * to_f64(&total)
}
