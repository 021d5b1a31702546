//! Property tests for the planner and gluing pipeline on randomly drawn
//! admissible problems: exactness of the rational split, stability under
//! relabeling, obstruction behavior, and end-to-end verification.

mod common;

use common::random_problem;
use hcmu::{
    build_gluing_graph, check_compatibility, check_obstruction, rat, rat_int, solve_angle_plan,
    solve_profiles, verify_assembly, AngleProblem, AssemblyError, PlanCase, Rat, Tolerances,
};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;

#[test]
fn random_plans_split_exactly() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..100 {
        let problem = random_problem(&mut rng);
        let plan = solve_angle_plan(&problem).unwrap();

        let saddle_sum: Rat = problem
            .saddle_indices()
            .iter()
            .map(|&i| problem.angles()[i].clone())
            .sum();
        let expected_n = saddle_sum - rat_int(problem.saddle_indices().len() as i64 - 1);
        assert_eq!(rat_int(plan.n_footballs as i64), expected_n);
        assert_eq!(plan.x.len(), plan.n_footballs);
        assert_eq!(plan.y.len(), plan.n_footballs);

        // One shared minimum: the y sum to the smallest non-saddle angle in
        // the two prescribed cases, and to 1 for the all-saddle case.
        let y_sum: Rat = plan.y.iter().cloned().sum();
        match plan.case {
            PlanCase::MinimalExceptional => {
                assert_eq!(y_sum, rat_int(1));
                assert!(plan.min_label.is_none());
                assert!(plan.x.iter().all(|x| *x == rat_int(1)));
            }
            _ => {
                let idx = plan.min_label.unwrap();
                assert_eq!(y_sum, problem.angles()[idx]);
            }
        }

        // All footballs share the ratio x/y, which exceeds 1.
        assert!(plan.ratio > rat_int(1));
        for (x, y) in plan.x.iter().zip(&plan.y) {
            assert_eq!(x, &(y * &plan.ratio));
        }
    }
}

#[test]
fn planner_is_stable_under_relabeling() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..50 {
        let problem = random_problem(&mut rng);
        let n = problem.angles().len();
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(&mut rng);
        // order[j] = original index placed at position j
        let angles: Vec<Rat> = order.iter().map(|&i| problem.angles()[i].clone()).collect();
        let saddles: BTreeSet<usize> = (0..n)
            .filter(|&j| problem.saddle_indices().contains(&order[j]))
            .collect();
        let shuffled =
            AngleProblem::new(problem.euler_char(), angles, saddles, problem.base_area()).unwrap();

        let a = solve_angle_plan(&problem).unwrap();
        let b = solve_angle_plan(&shuffled).unwrap();
        assert_eq!(a.case, b.case);
        assert_eq!(a.s, b.s);
        assert_eq!(a.ratio, b.ratio);
        let mut xa: Vec<Rat> = a.x.clone();
        let mut xb: Vec<Rat> = b.x.clone();
        xa.sort();
        xb.sort();
        assert_eq!(xa, xb);
        // The labeled minimum names the same angle value in both tellings.
        match (a.min_label, b.min_label) {
            (Some(i), Some(j)) => {
                assert_eq!(problem.angles()[i], shuffled.angles()[j]);
            }
            (None, None) => {}
            other => panic!("relabeling changed the minimum: {other:?}"),
        }
    }
}

#[test]
fn obstructed_problems_never_plan() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..50 {
        let good = random_problem(&mut rng);
        let wrong_euler = AngleProblem::new(
            0,
            good.angles().to_vec(),
            good.saddle_indices().clone(),
            good.base_area(),
        )
        .unwrap();
        assert!(!check_obstruction(&wrong_euler).is_admissible());
        assert!(matches!(
            solve_angle_plan(&wrong_euler),
            Err(AssemblyError::NotAdmissible { .. })
        ));
    }

    // Enough small non-saddle angles drive the surplus negative.
    let crowded = AngleProblem::new(
        2,
        vec![rat_int(2), rat(1, 2), rat(1, 2), rat(1, 2), rat(1, 2), rat(1, 2)],
        [0usize].into_iter().collect(),
        4.0 * std::f64::consts::PI,
    )
    .unwrap();
    let adm = check_obstruction(&crowded);
    assert!(!adm.is_admissible());
    assert_eq!(adm.surplus(), -2);
}

#[test]
fn random_assemblies_pass_verification() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let tol = Tolerances::default();
    for trial in 0..25 {
        let problem = random_problem(&mut rng);
        let plan = solve_angle_plan(&problem).unwrap();
        let graph = build_gluing_graph(&plan, &problem).unwrap();
        let profiles = solve_profiles(&graph, 65).unwrap();
        let rep = verify_assembly(&graph, &problem, &profiles, &tol);
        assert!(
            rep.passed(),
            "trial {trial} failed {:?} for angles {:?}",
            rep.failed_names(),
            problem.angles()
        );

        // Compatibility along every seam is symmetric in its endpoints.
        for e in &graph.edges {
            let sa = &graph.footballs[e.a.0].spec;
            let sb = &graph.footballs[e.b.0].spec;
            assert!(check_compatibility(sa, sb, tol.exact_rel));
            assert!(check_compatibility(sb, sa, tol.exact_rel));
            assert!(check_compatibility(sa, sa, tol.exact_rel));
        }
    }
}
