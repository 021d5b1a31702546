//! The three commands. Exit codes are a stable contract: 0 success,
//! 1 malformed input or I/O failure, 2 inadmissible (or unrealizable)
//! problem, 3 verification failure.

use crate::artifacts::{csv_name, read_profile_csv, write_dot, write_profile_csv, write_single_dot, DOT_FILE};
use crate::problem::{load_problem, LoadedProblem};
use crate::report::{
    check_rows, fmt_f64, graph_echo, parse_f64, parse_span, read_report, tolerance_echo,
    tolerances_from_echo, write_report, AngleEcho, CheckEcho, FootballEcho, PlanEcho, ProblemEcho,
    Report, Verdict,
};
use anyhow::{bail, Context, Result};
use hcmu::rational::{format_rat, parse_rat, rat_int};
use hcmu::{
    assemble_graph, build_gluing_graph, check_obstruction, curvature_extremes, profile_solve,
    solve_angle_plan, verify_assembly, verify_football, Admissibility, AngleProblem, AnglePlan,
    AssemblyError, FootballNode, FootballProfile, GluingGraph, MeridianId, PlanCase, SaddleCut,
    Tolerances,
};
use std::collections::BTreeSet;
use std::path::Path;

pub const EXIT_OK: u8 = 0;
pub const EXIT_MALFORMED: u8 = 1;
pub const EXIT_INADMISSIBLE: u8 = 2;
pub const EXIT_VERIFICATION: u8 = 3;

fn obstruction_line(problem: &AngleProblem) -> String {
    let sum = problem.saddle_angle_sum();
    let n = problem.angles().len() as i64;
    format!(
        "condition: sum(saddle angles) + chi - #angles = {} + {} - {} = {}",
        sum,
        problem.euler_char(),
        n,
        sum + problem.euler_char() - n
    )
}

pub fn cmd_check(input: &Path, base_area: Option<f64>, json: bool) -> Result<u8> {
    let loaded = load_problem(input, None, base_area, &[])?;
    let verdict = check_obstruction(&loaded.problem);
    if json {
        let reason = match &verdict {
            Admissibility::Admissible { .. } => None,
            Admissibility::Inadmissible { reason, .. } => Some(reason.clone()),
        };
        println!(
            "{}",
            serde_json::json!({
                "admissible": verdict.is_admissible(),
                "s": verdict.surplus(),
                "reason": reason,
            })
        );
    } else {
        println!("{}", obstruction_line(&loaded.problem));
        match &verdict {
            Admissibility::Admissible { surplus } => {
                println!("admissible: s={surplus} >= 0 and chi = 2");
            }
            Admissibility::Inadmissible { surplus, reason } => {
                println!("inadmissible: s={surplus}; {reason}");
            }
        }
    }
    Ok(if verdict.is_admissible() {
        EXIT_OK
    } else {
        EXIT_INADMISSIBLE
    })
}

fn problem_echo(problem: &AngleProblem, samples: usize) -> ProblemEcho {
    ProblemEcho {
        euler_char: problem.euler_char(),
        base_area: fmt_f64(problem.base_area()),
        samples,
        angles: problem
            .angles()
            .iter()
            .enumerate()
            .map(|(i, a)| AngleEcho {
                value: format_rat(a),
                saddle: problem.saddle_indices().contains(&i),
            })
            .collect(),
    }
}

fn plan_echo(plan: &AnglePlan) -> PlanEcho {
    PlanEcho {
        case: match plan.case {
            PlanCase::SurplusZero => "surplus_zero",
            PlanCase::SurplusPositive => "surplus_positive",
            PlanCase::MinimalExceptional => "minimal_exceptional",
        }
        .to_string(),
        s: plan.s,
        n_footballs: plan.n_footballs,
        ratio: format_rat(&plan.ratio),
        x: plan.x.iter().map(format_rat).collect(),
        y: plan.y.iter().map(format_rat).collect(),
        x_label: plan.x_label.clone(),
        min_label: plan.min_label,
        saddle_blocks: plan
            .saddle_blocks
            .iter()
            .map(|b| crate::report::BlockEcho {
                angle: b.angle,
                label: b.label,
                footballs: b.footballs.clone(),
            })
            .collect(),
    }
}

fn football_echoes(nodes: &[FootballNode], profiles: &[FootballProfile]) -> Vec<FootballEcho> {
    nodes
        .iter()
        .zip(profiles)
        .enumerate()
        .map(|(i, (node, profile))| {
            let ex = profile.extremes;
            FootballEcho {
                index: i,
                alpha: format_rat(&node.x),
                beta: format_rat(&node.y),
                area_factor: format_rat(&node.area_factor),
                area: fmt_f64(node.spec.area()),
                k_max: fmt_f64(ex.k_max()),
                k_min: fmt_f64(ex.k_min()),
                c: fmt_f64(ex.c()),
                length: fmt_f64(profile.length),
                csv: csv_name(i),
            }
        })
        .collect()
}

/// Runs the full verification suite over the given construction: one
/// report per football, plus the assembly report when seams exist.
fn run_suite(
    graph: Option<&GluingGraph>,
    problem: &AngleProblem,
    profiles: &[FootballProfile],
    tol: &Tolerances,
) -> Vec<CheckEcho> {
    let mut rows = Vec::new();
    for (i, profile) in profiles.iter().enumerate() {
        let rep = verify_football(profile, tol);
        rows.extend(check_rows(&format!("football_{i:02}"), &rep));
    }
    if let Some(graph) = graph {
        let rep = verify_assembly(graph, problem, profiles, tol);
        rows.extend(check_rows("", &rep));
    }
    rows
}

fn print_rows(rows: &[CheckEcho]) {
    for row in rows {
        let mark = if row.passed { "pass" } else { "FAIL" };
        println!(
            "  {mark}  {:<42} residual {:>24}  tolerance {:>24}",
            row.name, row.residual, row.tolerance
        );
    }
}

/// The saddle-free fast path admits exactly one shape of problem: two
/// angles on a sphere, realized by a single football.
fn single_football(problem: &AngleProblem) -> Result<FootballNode> {
    if problem.angles().len() != 2 {
        bail!(
            "a saddle-free problem describes a single football and needs exactly 2 angles, got {}",
            problem.angles().len()
        );
    }
    let (a, b) = (&problem.angles()[0], &problem.angles()[1]);
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    Ok(FootballNode::new(
        hi.clone(),
        lo.clone(),
        problem.base_area(),
        rat_int(1),
    )?)
}

pub fn cmd_build(
    input: &Path,
    out: &Path,
    samples: Option<usize>,
    base_area: Option<f64>,
    tols: &[(String, f64)],
    json: bool,
) -> Result<u8> {
    let LoadedProblem {
        problem,
        samples,
        tolerances,
    } = load_problem(input, samples, base_area, tols)?;
    std::fs::create_dir_all(out)
        .with_context(|| format!("cannot create output directory {}", out.display()))?;

    let adm = check_obstruction(&problem);
    let mut report = Report {
        problem: problem_echo(&problem, samples),
        tolerances: tolerance_echo(&tolerances),
        verdict: Verdict {
            admissible: adm.is_admissible(),
            surplus: adm.surplus(),
            realizable: false,
            reason: match &adm {
                Admissibility::Admissible { .. } => None,
                Admissibility::Inadmissible { reason, .. } => Some(reason.clone()),
            },
        },
        plan: None,
        footballs: Vec::new(),
        graph: None,
        verification: Vec::new(),
        passed: false,
    };

    if !adm.is_admissible() {
        write_report(out, &report)?;
        if json {
            println!("{}", serde_json::json!({"verdict": "inadmissible", "s": adm.surplus()}));
        } else {
            println!("{}", obstruction_line(&problem));
            println!("inadmissible; report written to {}", out.display());
        }
        return Ok(EXIT_INADMISSIBLE);
    }

    // Plan and assemble. A failed ratio constraint is a semantic "no
    // assembly exists", reported like inadmissibility; everything else is
    // a malformed problem.
    let (nodes, graph) = if problem.saddle_indices().is_empty() {
        (vec![single_football(&problem)?], None)
    } else {
        match solve_angle_plan(&problem) {
            Ok(plan) => {
                let graph = build_gluing_graph(&plan, &problem)?;
                report.plan = Some(plan_echo(&plan));
                (graph.footballs.clone(), Some(graph))
            }
            Err(AssemblyError::RatioConstraint { alpha_n, denom }) => {
                report.verdict.reason = Some(format!(
                    "ratio constraint failed: the remaining angle mass {denom} does not exceed the smallest non-saddle angle {alpha_n}"
                ));
                write_report(out, &report)?;
                if json {
                    println!("{}", serde_json::json!({"verdict": "unrealizable"}));
                } else {
                    println!("admissible but unrealizable: {}", report.verdict.reason.as_deref().unwrap());
                }
                return Ok(EXIT_INADMISSIBLE);
            }
            Err(e) => return Err(e.into()),
        }
    };
    report.verdict.realizable = true;

    let profiles: Vec<FootballProfile> = nodes
        .iter()
        .map(|node| profile_solve(&node.spec, samples))
        .collect::<Result<_, _>>()?;

    for (i, profile) in profiles.iter().enumerate() {
        write_profile_csv(&out.join(csv_name(i)), profile)?;
    }
    match &graph {
        Some(graph) => write_dot(&out.join(DOT_FILE), graph)?,
        None => write_single_dot(&out.join(DOT_FILE), &nodes[0].x, &nodes[0].y)?,
    }

    report.footballs = football_echoes(&nodes, &profiles);
    report.graph = graph.as_ref().map(graph_echo);
    report.verification = run_suite(graph.as_ref(), &problem, &profiles, &tolerances);
    report.passed = report.verification.iter().all(|r| r.passed);
    write_report(out, &report)?;

    if json {
        let failed: Vec<&str> = report
            .verification
            .iter()
            .filter(|r| !r.passed)
            .map(|r| r.name.as_str())
            .collect();
        println!(
            "{}",
            serde_json::json!({
                "verdict": "built",
                "footballs": nodes.len(),
                "passed": report.passed,
                "failed": failed,
            })
        );
    } else {
        println!(
            "built {} football(s) at {} samples into {}",
            nodes.len(),
            samples,
            out.display()
        );
        print_rows(&report.verification);
        println!("verification: {}", if report.passed { "pass" } else { "FAIL" });
    }
    Ok(if report.passed { EXIT_OK } else { EXIT_VERIFICATION })
}

fn problem_from_echo(echo: &ProblemEcho) -> Result<AngleProblem> {
    let mut angles = Vec::with_capacity(echo.angles.len());
    let mut saddles = BTreeSet::new();
    for (i, a) in echo.angles.iter().enumerate() {
        angles.push(parse_rat(&a.value).with_context(|| format!("report angles[{i}]"))?);
        if a.saddle {
            saddles.insert(i);
        }
    }
    Ok(AngleProblem::new(
        echo.euler_char,
        angles,
        saddles,
        parse_f64(&echo.base_area).context("report base_area")?,
    )?)
}

pub fn cmd_verify(out: &Path, json: bool) -> Result<u8> {
    let report = read_report(out)?;
    let problem = problem_from_echo(&report.problem)?;
    let tolerances = tolerances_from_echo(&report.tolerances)?;

    if !(report.verdict.admissible && report.verdict.realizable) {
        let adm = check_obstruction(&problem);
        let consistent = adm.is_admissible() == report.verdict.admissible;
        if json {
            println!(
                "{}",
                serde_json::json!({"verdict": "nothing built", "consistent": consistent})
            );
        } else {
            println!("report records no build (inadmissible or unrealizable problem)");
        }
        return Ok(if consistent {
            EXIT_INADMISSIBLE
        } else {
            EXIT_VERIFICATION
        });
    }

    // Rebuild the construction from the report, profiles from the tables.
    let mut nodes = Vec::with_capacity(report.footballs.len());
    for fb in &report.footballs {
        let x = parse_rat(&fb.alpha).with_context(|| format!("football {} alpha", fb.index))?;
        let y = parse_rat(&fb.beta).with_context(|| format!("football {} beta", fb.index))?;
        let factor =
            parse_rat(&fb.area_factor).with_context(|| format!("football {} area_factor", fb.index))?;
        nodes.push(FootballNode::new(x, y, problem.base_area(), factor)?);
    }
    let graph = match &report.graph {
        Some(echo) => {
            let cuts: Vec<SaddleCut> = echo
                .construction
                .cuts
                .iter()
                .map(|c| -> Result<SaddleCut> {
                    Ok(SaddleCut {
                        angle: c.angle,
                        label: c.label,
                        cycle: c.cycle.iter().map(|&(fb, m)| (fb, MeridianId(m))).collect(),
                        span: parse_span(&c.span)?,
                    })
                })
                .collect::<Result<_>>()?;
            Some(assemble_graph(
                nodes.clone(),
                &cuts,
                &echo.construction.min_labels,
                &echo.construction.max_labels,
                problem.euler_char(),
                problem.base_area(),
            )?)
        }
        None => None,
    };

    let mut profiles = Vec::with_capacity(nodes.len());
    for (node, fb) in nodes.iter().zip(&report.footballs) {
        let samples = read_profile_csv(&out.join(&fb.csv))?;
        let length = samples.last().map_or(0.0, |s| s.u);
        profiles.push(FootballProfile {
            spec: node.spec,
            extremes: curvature_extremes(&node.spec),
            length,
            samples,
        });
    }

    let rows = run_suite(graph.as_ref(), &problem, &profiles, &tolerances);
    let passed = rows.iter().all(|r| r.passed);
    if json {
        let failed: Vec<&str> = rows.iter().filter(|r| !r.passed).map(|r| r.name.as_str()).collect();
        println!("{}", serde_json::json!({"passed": passed, "failed": failed}));
    } else {
        print_rows(&rows);
        println!("verification: {}", if passed { "pass" } else { "FAIL" });
    }
    Ok(if passed { EXIT_OK } else { EXIT_VERIFICATION })
}
