//! Combinatorial gluing graphs for football assemblies.
//!
//! A saddle point of cone angle 2*pi*a is produced by slitting a footballs
//! along a meridian, from the midpoint of the meridian down to one pole, and
//! gluing the slit banks cyclically: each bank seam joins one football's
//! right bank to the next football's left bank. The saddle then has angle
//! 2*pi*a and meets 2a meridian segments (each slit meridian counts twice:
//! the untouched segment on the far side of the saddle plus the seam). The
//! poles at the slit ends get identified along the seams; the poles on the
//! far side stay interior cone points of their football.
//!
//! The graph records footballs, saddles, seams, and the resulting pole
//! classes, and exposes the two Euler characteristic counts the verifier
//! compares: the combinatorial count
//!
//! ```text
//! chi = #saddles + #pole classes - #seams
//! ```
//!
//! (poles untouched by seams each count as their own class, matching the
//! cell structure in which every slit football is one face carrying its free
//! pole in its interior), and the Poincare-Hopf count
//!
//! ```text
//! chi = sum over saddles of (1 - angle) + #extremal classes.
//! ```

use super::AssemblyError;
use crate::football::{profile_solve, FootballError, FootballProfile, FootballSpec};
use crate::rational::{to_f64, Rat};
use num::Zero;
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet};

/// Identifies one cut meridian within a football. Distinct ids on the same
/// football are distinct meridians; a meridian can be slit only once.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct MeridianId(pub u32);

/// Which half of the slit meridian the seams of a cut occupy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SeamSpan {
    /// Slit from the saddle down to the curvature minimum; the cycle's
    /// minima are identified.
    SaddleToMin,
    /// Slit from the curvature maximum down to the saddle; the cycle's
    /// maxima are identified.
    MaxToSaddle,
}

/// One football of the assembly with its exact angle data. The float spec is
/// derived from the rationals: alpha = x, beta = y, area = base * factor.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FootballNode {
    pub spec: FootballSpec,
    #[serde(with = "crate::rational::rat_string")]
    pub x: Rat,
    #[serde(with = "crate::rational::rat_string")]
    pub y: Rat,
    #[serde(with = "crate::rational::rat_string")]
    pub area_factor: Rat,
}

impl FootballNode {
    pub fn new(x: Rat, y: Rat, base_area: f64, area_factor: Rat) -> Result<Self, FootballError> {
        let spec = FootballSpec::new(to_f64(&x), to_f64(&y), base_area * to_f64(&area_factor))?;
        Ok(FootballNode {
            spec,
            x,
            y,
            area_factor,
        })
    }
}

/// Gluing instruction for one saddle: the footballs and meridians slit for
/// it, in cyclic order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SaddleCut {
    /// Cone angle of the saddle in units of 2*pi; the cycle must have
    /// exactly this many slots.
    pub angle: u64,
    /// Problem angle index this saddle realizes, if prescribed.
    pub label: Option<usize>,
    /// (football id, meridian) slots; slot i's right bank glues to slot
    /// i+1's left bank, cyclically.
    pub cycle: Vec<(usize, MeridianId)>,
    pub span: SeamSpan,
}

/// A saddle vertex of the assembled surface.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SaddleVertex {
    pub angle: u64,
    pub label: Option<usize>,
    /// Meridian segments meeting the saddle, 2*angle entries: each slot's
    /// slit meridian appears twice (far segment and seam).
    pub incident: Vec<(usize, MeridianId)>,
}

/// A class of identified poles (all minima or all maxima).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExtremalVertex {
    /// Total cone angle of the class: the exact sum of the member
    /// footballs' pole angles.
    #[serde(with = "crate::rational::rat_string")]
    pub angle: Rat,
    /// Footballs whose pole belongs to the class, ascending.
    pub footballs: Vec<usize>,
    /// Problem angle index the class realizes, if prescribed; None means
    /// the point must be smooth (angle exactly 1).
    pub label: Option<usize>,
}

/// One glued pair of slit banks.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Seam {
    /// Right bank owner (football, meridian).
    pub a: (usize, MeridianId),
    /// Left bank owner.
    pub b: (usize, MeridianId),
    pub span: SeamSpan,
    /// Index into the graph's saddle list.
    pub saddle: usize,
}

/// The assembled surface: footballs, saddle cycles, seams, and pole classes.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GluingGraph {
    pub euler_char_target: i64,
    pub base_area: f64,
    pub footballs: Vec<FootballNode>,
    pub saddles: Vec<SaddleVertex>,
    pub edges: Vec<Seam>,
    pub min_vertices: Vec<ExtremalVertex>,
    pub max_vertices: Vec<ExtremalVertex>,
}

impl GluingGraph {
    /// Cell-counting Euler characteristic of the glued surface:
    /// #saddles + #pole classes - #seams.
    pub fn combinatorial_euler_char(&self) -> i64 {
        self.saddles.len() as i64 + self.min_vertices.len() as i64 + self.max_vertices.len() as i64
            - self.edges.len() as i64
    }

    /// Poincare-Hopf count for the curvature gradient field: saddles carry
    /// index 1 - angle, extremal classes index 1.
    pub fn index_formula_euler_char(&self) -> i64 {
        let saddle_sum: i64 = self.saddles.iter().map(|s| 1 - s.angle as i64).sum();
        saddle_sum + self.min_vertices.len() as i64 + self.max_vertices.len() as i64
    }

    /// The extremal class containing a football's minimum pole.
    pub fn min_class_of(&self, football: usize) -> Option<&ExtremalVertex> {
        self.min_vertices
            .iter()
            .find(|v| v.footballs.contains(&football))
    }

    pub fn max_class_of(&self, football: usize) -> Option<&ExtremalVertex> {
        self.max_vertices
            .iter()
            .find(|v| v.footballs.contains(&football))
    }
}

/// Relative defect of the two gluing-compatibility identities for a pair of
/// footballs: equal angle ratios alpha/beta, and areas proportional to the
/// maximum angles. Zero means exactly compatible.
pub fn compatibility_residual(a: &FootballSpec, b: &FootballSpec) -> f64 {
    let lhs1 = a.alpha() * b.beta();
    let rhs1 = b.alpha() * a.beta();
    let r1 = (lhs1 - rhs1).abs() / lhs1.abs().max(rhs1.abs());
    let lhs2 = a.area() * b.alpha();
    let rhs2 = b.area() * a.alpha();
    let r2 = (lhs2 - rhs2).abs() / lhs2.abs().max(rhs2.abs());
    r1.max(r2)
}

/// True when two footballs can be glued along meridians: their angle ratios
/// agree and their areas are proportional to their angles, within `rel_tol`.
/// Compatible footballs share curvature extremes and meridian length, and
/// their warp factors agree up to the exact factor alpha_a/alpha_b.
pub fn check_compatibility(a: &FootballSpec, b: &FootballSpec, rel_tol: f64) -> bool {
    compatibility_residual(a, b) <= rel_tol
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, i: usize) -> usize {
        if self.parent[i] != i {
            let root = self.find(self.parent[i]);
            self.parent[i] = root;
        }
        self.parent[i]
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Assembles footballs and saddle cuts into a gluing graph.
///
/// Validates the combinatorial shape only (cycle lengths, distinct slits,
/// label sanity); metric compatibility is the verifier's business.
/// `min_labels` and `max_labels` prescribe problem angle indices for the
/// pole classes, each given as (football id, problem angle index) with the
/// football naming the class through its pole.
pub fn assemble_graph(
    footballs: Vec<FootballNode>,
    cuts: &[SaddleCut],
    min_labels: &[(usize, usize)],
    max_labels: &[(usize, usize)],
    euler_char_target: i64,
    base_area: f64,
) -> Result<GluingGraph, AssemblyError> {
    let n = footballs.len();
    if n == 0 {
        return Err(AssemblyError::Graph("no footballs".into()));
    }

    let mut slits: BTreeSet<(usize, MeridianId)> = BTreeSet::new();
    let mut saddles = Vec::with_capacity(cuts.len());
    let mut edges = Vec::new();
    // Pole slot ids: 2*football for the maximum, 2*football + 1 for the
    // minimum.
    let mut classes = UnionFind::new(2 * n);

    for (ci, cut) in cuts.iter().enumerate() {
        if cut.angle < 2 {
            return Err(AssemblyError::Graph(format!(
                "saddle {ci} has angle {}, needs at least 2",
                cut.angle
            )));
        }
        if cut.cycle.len() as u64 != cut.angle {
            return Err(AssemblyError::Graph(format!(
                "saddle {ci} of angle {} has {} cycle slots; a saddle of angle a needs exactly a slit footballs",
                cut.angle,
                cut.cycle.len()
            )));
        }
        for &(fb, m) in &cut.cycle {
            if fb >= n {
                return Err(AssemblyError::Graph(format!(
                    "saddle {ci} references football {fb}, but there are only {n}"
                )));
            }
            if !slits.insert((fb, m)) {
                return Err(AssemblyError::Graph(format!(
                    "meridian {} of football {fb} is slit twice; both banks of a slit are consumed by its own cycle",
                    m.0
                )));
            }
        }

        let mut incident = Vec::with_capacity(2 * cut.cycle.len());
        for (i, &slot) in cut.cycle.iter().enumerate() {
            incident.push(slot);
            incident.push(slot);
            let next = cut.cycle[(i + 1) % cut.cycle.len()];
            let side = match cut.span {
                SeamSpan::SaddleToMin => 1,
                SeamSpan::MaxToSaddle => 0,
            };
            classes.union(2 * slot.0 + side, 2 * next.0 + side);
            edges.push(Seam {
                a: slot,
                b: next,
                span: cut.span,
                saddle: ci,
            });
        }
        saddles.push(SaddleVertex {
            angle: cut.angle,
            label: cut.label,
            incident,
        });
    }

    // Pole classes, keyed by their union-find root for stable ordering.
    let mut min_groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    let mut max_groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for fb in 0..n {
        max_groups.entry(classes.find(2 * fb)).or_default().push(fb);
        min_groups
            .entry(classes.find(2 * fb + 1))
            .or_default()
            .push(fb);
    }

    let build = |groups: BTreeMap<usize, Vec<usize>>,
                 labels: &[(usize, usize)],
                 side: &str,
                 angle_of: &dyn Fn(usize) -> Rat|
     -> Result<Vec<ExtremalVertex>, AssemblyError> {
        let mut vertices: Vec<ExtremalVertex> = groups
            .into_values()
            .map(|members| ExtremalVertex {
                angle: members.iter().map(|&fb| angle_of(fb)).fold(Rat::zero(), |a, b| a + b),
                footballs: members,
                label: None,
            })
            .collect();
        for &(fb, idx) in labels {
            if fb >= n {
                return Err(AssemblyError::Graph(format!(
                    "{side} label references football {fb}, but there are only {n}"
                )));
            }
            let v = vertices
                .iter_mut()
                .find(|v| v.footballs.contains(&fb))
                .expect("every football has a pole class");
            if let Some(existing) = v.label {
                if existing != idx {
                    return Err(AssemblyError::Graph(format!(
                        "{side} class of football {fb} labeled twice: angle indices {existing} and {idx}"
                    )));
                }
            }
            v.label = Some(idx);
        }
        Ok(vertices)
    };

    let min_vertices = build(min_groups, min_labels, "minimum", &|fb| {
        footballs[fb].y.clone()
    })?;
    let max_vertices = build(max_groups, max_labels, "maximum", &|fb| {
        footballs[fb].x.clone()
    })?;

    Ok(GluingGraph {
        euler_char_target,
        base_area,
        footballs,
        saddles,
        edges,
        min_vertices,
        max_vertices,
    })
}

/// Turns an exact plan back into a concrete gluing graph for its problem:
/// one football per plan entry, all saddle cuts slit toward the minima, the
/// shared minimum and the labeled maxima carrying their problem indices.
pub fn build_gluing_graph(
    plan: &super::AnglePlan,
    problem: &super::AngleProblem,
) -> Result<GluingGraph, AssemblyError> {
    let mut footballs = Vec::with_capacity(plan.n_footballs);
    for (x, y) in plan.x.iter().zip(&plan.y) {
        footballs.push(FootballNode::new(
            x.clone(),
            y.clone(),
            problem.base_area(),
            x.clone(),
        )?);
    }

    let mut next_meridian = vec![0u32; plan.n_footballs];
    let cuts: Vec<SaddleCut> = plan
        .saddle_blocks
        .iter()
        .map(|block| SaddleCut {
            angle: block.angle,
            label: Some(block.label),
            cycle: block
                .footballs
                .iter()
                .map(|&fb| {
                    let m = MeridianId(next_meridian[fb]);
                    next_meridian[fb] += 1;
                    (fb, m)
                })
                .collect(),
            span: SeamSpan::SaddleToMin,
        })
        .collect();

    let min_labels: Vec<(usize, usize)> = plan.min_label.iter().map(|&idx| (0, idx)).collect();
    let max_labels: Vec<(usize, usize)> = plan
        .x_label
        .iter()
        .enumerate()
        .filter_map(|(fb, lab)| lab.map(|idx| (fb, idx)))
        .collect();

    assemble_graph(
        footballs,
        &cuts,
        &min_labels,
        &max_labels,
        problem.euler_char(),
        problem.base_area(),
    )
}

/// Solves every football of the graph on the same sample count.
pub fn solve_profiles(
    graph: &GluingGraph,
    n_samples: usize,
) -> Result<Vec<FootballProfile>, FootballError> {
    graph
        .footballs
        .iter()
        .map(|node| profile_solve(&node.spec, n_samples))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::super::{solve_angle_plan, AngleProblem};
    use super::*;
    use crate::rational::{rat, rat_int};
    use std::f64::consts::PI;

    fn node(xn: i64, xd: i64, yn: i64, yd: i64, base: f64) -> FootballNode {
        FootballNode::new(rat(xn, xd), rat(yn, yd), base, rat(xn, xd)).unwrap()
    }

    #[test]
    fn compatibility_examples() {
        let base = 4.0 * PI;
        let a = FootballSpec::new(0.5, 1.0 / 9.0, base * 0.5).unwrap();
        let b = FootballSpec::new(1.0, 2.0 / 9.0, base).unwrap();
        assert!(check_compatibility(&a, &b, 1e-12));
        assert!(check_compatibility(&a, &a, 1e-12));
        // Same angles but equal areas: the area proportion fails.
        let c = FootballSpec::new(1.0, 2.0 / 9.0, base * 0.5).unwrap();
        assert!(!check_compatibility(&a, &c, 1e-12));
        // Mismatched angle ratio.
        let d = FootballSpec::new(1.0, 0.25, base).unwrap();
        assert!(!check_compatibility(&a, &d, 1e-12));
    }

    #[test]
    fn single_cycle_topology() {
        // Three unit footballs around one saddle of angle 3.
        let base = 4.0 * PI;
        let footballs = vec![
            node(1, 1, 1, 3, base),
            node(1, 1, 1, 3, base),
            node(1, 1, 1, 3, base),
        ];
        let cut = SaddleCut {
            angle: 3,
            label: Some(0),
            cycle: vec![
                (0, MeridianId(0)),
                (1, MeridianId(0)),
                (2, MeridianId(0)),
            ],
            span: SeamSpan::SaddleToMin,
        };
        let g = assemble_graph(footballs, &[cut], &[], &[], 2, base).unwrap();
        assert_eq!(g.edges.len(), 3);
        assert_eq!(g.saddles[0].incident.len(), 6);
        assert_eq!(g.min_vertices.len(), 1);
        assert_eq!(g.min_vertices[0].footballs, vec![0, 1, 2]);
        assert_eq!(g.min_vertices[0].angle, rat_int(1));
        assert_eq!(g.max_vertices.len(), 3);
        assert_eq!(g.combinatorial_euler_char(), 2);
        assert_eq!(g.index_formula_euler_char(), 2);
    }

    #[test]
    fn chain_shares_a_football_on_distinct_meridians() {
        let p = AngleProblem::new(
            2,
            vec![rat_int(2), rat_int(2), rat(1, 2)],
            [0, 1].into_iter().collect(),
            4.0 * PI,
        )
        .unwrap();
        let plan = solve_angle_plan(&p).unwrap();
        let g = build_gluing_graph(&plan, &p).unwrap();
        assert_eq!(g.footballs.len(), 3);
        assert_eq!(g.edges.len(), 4);
        assert_eq!(g.saddles.len(), 2);
        // The shared football appears in both cycles through different
        // meridians.
        let shared: Vec<(usize, MeridianId)> = g
            .edges
            .iter()
            .flat_map(|e| [e.a, e.b])
            .filter(|(fb, _)| *fb == 1)
            .collect();
        assert!(shared.contains(&(1, MeridianId(0))));
        assert!(shared.contains(&(1, MeridianId(1))));
        assert_eq!(g.min_vertices.len(), 1);
        assert_eq!(g.min_vertices[0].angle, rat(1, 2));
        assert_eq!(g.min_vertices[0].label, Some(2));
        assert_eq!(g.max_vertices.len(), 3);
        assert_eq!(g.combinatorial_euler_char(), 2);
        assert_eq!(g.index_formula_euler_char(), 2);
    }

    #[test]
    fn planner_graph_carries_labels_and_areas() {
        let p = AngleProblem::new(
            2,
            vec![rat_int(2), rat(1, 2), rat(1, 3)],
            [0].into_iter().collect(),
            4.0 * PI,
        )
        .unwrap();
        let plan = solve_angle_plan(&p).unwrap();
        let g = build_gluing_graph(&plan, &p).unwrap();
        assert_eq!(g.footballs.len(), 2);
        assert!((g.footballs[0].spec.area() - 2.0 * PI).abs() < 1e-12);
        assert!((g.footballs[1].spec.area() - 4.0 * PI).abs() < 1e-12);
        assert_eq!(g.min_vertices[0].label, Some(2));
        assert_eq!(g.min_vertices[0].angle, rat(1, 3));
        let labeled_max = g.max_vertices.iter().find(|v| v.label.is_some()).unwrap();
        assert_eq!(labeled_max.label, Some(1));
        assert_eq!(labeled_max.angle, rat(1, 2));
        assert_eq!(g.combinatorial_euler_char(), 2);
        // All pairs compatible.
        for a in &g.footballs {
            for b in &g.footballs {
                assert!(check_compatibility(&a.spec, &b.spec, 1e-12));
            }
        }
    }

    #[test]
    fn double_slit_is_rejected() {
        let base = 4.0 * PI;
        let footballs = vec![node(1, 1, 1, 2, base), node(1, 1, 1, 2, base)];
        let cut = |m0: u32, m1: u32| SaddleCut {
            angle: 2,
            label: None,
            cycle: vec![(0, MeridianId(m0)), (1, MeridianId(m1))],
            span: SeamSpan::SaddleToMin,
        };
        // Same meridian of football 0 used by two saddles.
        let err = assemble_graph(
            vec![footballs[0].clone(), footballs[1].clone()],
            &[cut(0, 0), cut(0, 1)],
            &[],
            &[],
            2,
            base,
        )
        .unwrap_err();
        assert!(matches!(err, AssemblyError::Graph(_)));
    }

    #[test]
    fn cycle_length_must_match_angle() {
        let base = 4.0 * PI;
        let footballs = vec![node(1, 1, 1, 2, base), node(1, 1, 1, 2, base)];
        let cut = SaddleCut {
            angle: 3,
            label: None,
            cycle: vec![(0, MeridianId(0)), (1, MeridianId(0))],
            span: SeamSpan::SaddleToMin,
        };
        assert!(assemble_graph(footballs, &[cut], &[], &[], 2, base).is_err());
    }

    #[test]
    fn max_side_gluing_merges_maxima() {
        // Two footballs glued along their maxima: the merged maximum is
        // smooth (3/5 + 2/5 = 1) and the two minima stay separate.
        let base = 10.0;
        let footballs = vec![
            FootballNode::new(rat(3, 5), rat(1, 2), base, rat(3, 5)).unwrap(),
            FootballNode::new(rat(2, 5), rat(1, 3), base, rat(2, 5)).unwrap(),
        ];
        let cut = SaddleCut {
            angle: 2,
            label: Some(0),
            cycle: vec![(0, MeridianId(0)), (1, MeridianId(0))],
            span: SeamSpan::MaxToSaddle,
        };
        let g = assemble_graph(footballs, &[cut], &[(0, 1), (1, 2)], &[], 2, base).unwrap();
        assert_eq!(g.max_vertices.len(), 1);
        assert_eq!(g.max_vertices[0].angle, rat_int(1));
        assert_eq!(g.max_vertices[0].label, None);
        assert_eq!(g.min_vertices.len(), 2);
        assert_eq!(g.min_vertices[0].angle, rat(1, 2));
        assert_eq!(g.min_vertices[0].label, Some(1));
        assert_eq!(g.min_vertices[1].angle, rat(1, 3));
        assert_eq!(g.min_vertices[1].label, Some(2));
        assert_eq!(g.combinatorial_euler_char(), 2);
        assert_eq!(g.index_formula_euler_char(), 2);
    }

    #[test]
    fn conflicting_labels_are_rejected() {
        let base = 4.0 * PI;
        let footballs = vec![node(1, 1, 1, 2, base), node(1, 1, 1, 2, base)];
        let cut = SaddleCut {
            angle: 2,
            label: Some(0),
            cycle: vec![(0, MeridianId(0)), (1, MeridianId(0))],
            span: SeamSpan::SaddleToMin,
        };
        // Both labels land on the same merged minimum class.
        let err = assemble_graph(footballs, &[cut], &[(0, 1), (1, 2)], &[], 2, base).unwrap_err();
        assert!(matches!(err, AssemblyError::Graph(_)));
    }

    #[test]
    fn profiles_solve_per_node() {
        let p = AngleProblem::new(
            2,
            vec![rat_int(2), rat(1, 2), rat(1, 3)],
            [0].into_iter().collect(),
            4.0 * PI,
        )
        .unwrap();
        let plan = solve_angle_plan(&p).unwrap();
        let g = build_gluing_graph(&plan, &p).unwrap();
        let profiles = solve_profiles(&g, 65).unwrap();
        assert_eq!(profiles.len(), 2);
        assert!(profiles.iter().all(|p| p.samples.len() == 65));
        // Shared extremes across the assembly.
        let e0 = profiles[0].extremes;
        let e1 = profiles[1].extremes;
        assert!((e0.k_max() - e1.k_max()).abs() < 1e-12 * e0.k_max().abs());
        assert!((e0.k_min() - e1.k_min()).abs() < 1e-12 * e0.k_max().abs());
    }
}
