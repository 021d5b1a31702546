//! The machine-readable run report: everything a later `verify` needs to
//! reconstruct the run, in one JSON document with deterministic formatting.
//!
//! Numbers follow one rule everywhere: exact rationals as "p/q" strings,
//! floating-point values as 17-significant-digit scientific strings, so a
//! report byte-compares equal across runs and round-trips losslessly.

use anyhow::{Context, Result};
use hcmu::{Check, GluingGraph, SeamSpan, Tolerances, VerificationReport};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::path::Path;

pub const REPORT_FILE: &str = "report.json";

pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn parse_f64(s: &str) -> Result<f64> {
    s.parse::<f64>()
        .with_context(|| format!("not a decimal number: {s:?}"))
}

#[derive(Serialize, Deserialize)]
pub struct Report {
    pub problem: ProblemEcho,
    pub tolerances: BTreeMap<String, String>,
    pub verdict: Verdict,
    pub plan: Option<PlanEcho>,
    pub footballs: Vec<FootballEcho>,
    pub graph: Option<GraphEcho>,
    pub verification: Vec<CheckEcho>,
    pub passed: bool,
}

#[derive(Serialize, Deserialize)]
pub struct ProblemEcho {
    pub euler_char: i64,
    /// Effective base area after flag overrides, 17-digit decimal.
    pub base_area: String,
    pub samples: usize,
    pub angles: Vec<AngleEcho>,
}

#[derive(Serialize, Deserialize)]
pub struct AngleEcho {
    pub value: String,
    pub saddle: bool,
}

#[derive(Serialize, Deserialize)]
pub struct Verdict {
    pub admissible: bool,
    /// The obstruction surplus: saddle angle sum + chi - number of angles.
    pub surplus: i64,
    /// Admissible problems can still fail the planner's ratio constraint.
    pub realizable: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

#[derive(Serialize, Deserialize)]
pub struct PlanEcho {
    pub case: String,
    pub s: u64,
    pub n_footballs: usize,
    pub ratio: String,
    pub x: Vec<String>,
    pub y: Vec<String>,
    pub x_label: Vec<Option<usize>>,
    pub min_label: Option<usize>,
    pub saddle_blocks: Vec<BlockEcho>,
}

#[derive(Serialize, Deserialize)]
pub struct BlockEcho {
    pub angle: u64,
    pub label: usize,
    pub footballs: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
pub struct FootballEcho {
    pub index: usize,
    /// Cone angle rationals at the curvature maximum and minimum.
    pub alpha: String,
    pub beta: String,
    pub area_factor: String,
    pub area: String,
    pub k_max: String,
    pub k_min: String,
    pub c: String,
    pub length: String,
    pub csv: String,
}

/// The gluing data splits in two: `construction` is sufficient to rebuild
/// the graph (and is what `verify` consumes); `derived` is the resolved
/// vertex/edge view for human readers and plotting.
#[derive(Serialize, Deserialize)]
pub struct GraphEcho {
    pub construction: ConstructionEcho,
    pub derived: DerivedEcho,
}

#[derive(Serialize, Deserialize)]
pub struct ConstructionEcho {
    pub cuts: Vec<CutEcho>,
    pub min_labels: Vec<(usize, usize)>,
    pub max_labels: Vec<(usize, usize)>,
}

#[derive(Serialize, Deserialize)]
pub struct CutEcho {
    pub angle: u64,
    pub label: Option<usize>,
    pub span: String,
    /// (football index, meridian id) around the cut cycle.
    pub cycle: Vec<(usize, u32)>,
}

#[derive(Serialize, Deserialize)]
pub struct DerivedEcho {
    pub saddles: Vec<SaddleEcho>,
    pub min_classes: Vec<ClassEcho>,
    pub max_classes: Vec<ClassEcho>,
    pub seams: Vec<SeamEcho>,
    pub euler_char_combinatorial: i64,
    pub euler_char_index: i64,
}

#[derive(Serialize, Deserialize)]
pub struct SaddleEcho {
    pub angle: u64,
    pub label: Option<usize>,
    pub incidences: usize,
}

#[derive(Serialize, Deserialize)]
pub struct ClassEcho {
    pub angle: String,
    pub footballs: Vec<usize>,
    pub label: Option<usize>,
}

#[derive(Serialize, Deserialize)]
pub struct SeamEcho {
    pub a: (usize, u32),
    pub b: (usize, u32),
    pub span: String,
    pub saddle: usize,
}

#[derive(Serialize, Deserialize)]
pub struct CheckEcho {
    pub name: String,
    pub residual: String,
    pub tolerance: String,
    pub passed: bool,
}

pub fn span_name(span: SeamSpan) -> &'static str {
    match span {
        SeamSpan::SaddleToMin => "saddle_to_min",
        SeamSpan::MaxToSaddle => "max_to_saddle",
    }
}

pub fn parse_span(name: &str) -> Result<SeamSpan> {
    match name {
        "saddle_to_min" => Ok(SeamSpan::SaddleToMin),
        "max_to_saddle" => Ok(SeamSpan::MaxToSaddle),
        other => anyhow::bail!("unknown seam span {other:?}"),
    }
}

pub fn tolerance_echo(tol: &Tolerances) -> BTreeMap<String, String> {
    [
        ("fd_scale", tol.fd_scale),
        ("area_rel", tol.area_rel),
        ("exact_rel", tol.exact_rel),
        ("length_rel", tol.length_rel),
        ("ratio_rel", tol.ratio_rel),
    ]
    .into_iter()
    .map(|(k, v)| (k.to_string(), fmt_f64(v)))
    .collect()
}

pub fn tolerances_from_echo(map: &BTreeMap<String, String>) -> Result<Tolerances> {
    let mut tol = Tolerances::default();
    for (name, value) in map {
        tol.set(name, parse_f64(value)?)
            .with_context(|| format!("tolerances.{name}"))?;
    }
    Ok(tol)
}

pub fn check_rows(prefix: &str, rep: &VerificationReport) -> Vec<CheckEcho> {
    rep.checks.iter().map(|c| check_row(prefix, c)).collect()
}

fn check_row(prefix: &str, c: &Check) -> CheckEcho {
    CheckEcho {
        name: if prefix.is_empty() {
            c.name.clone()
        } else {
            format!("{prefix}.{}", c.name)
        },
        residual: fmt_f64(c.residual),
        tolerance: fmt_f64(c.tolerance),
        passed: c.passed,
    }
}

pub fn graph_echo(graph: &GluingGraph) -> GraphEcho {
    GraphEcho {
        construction: ConstructionEcho {
            cuts: graph
                .saddles
                .iter()
                .enumerate()
                .map(|(si, s)| CutEcho {
                    angle: s.angle,
                    label: s.label,
                    span: span_name(
                        graph
                            .edges
                            .iter()
                            .find(|e| e.saddle == si)
                            .expect("every saddle seams at least twice")
                            .span,
                    )
                    .to_string(),
                    cycle: cut_cycle_of(s),
                })
                .collect(),
            min_labels: labeled_members(&graph.min_vertices),
            max_labels: labeled_members(&graph.max_vertices),
        },
        derived: DerivedEcho {
            saddles: graph
                .saddles
                .iter()
                .map(|s| SaddleEcho {
                    angle: s.angle,
                    label: s.label,
                    incidences: s.incident.len(),
                })
                .collect(),
            min_classes: class_echoes(&graph.min_vertices),
            max_classes: class_echoes(&graph.max_vertices),
            seams: graph
                .edges
                .iter()
                .map(|e| SeamEcho {
                    a: (e.a.0, e.a.1 .0),
                    b: (e.b.0, e.b.1 .0),
                    span: span_name(e.span).to_string(),
                    saddle: e.saddle,
                })
                .collect(),
            euler_char_combinatorial: graph.combinatorial_euler_char(),
            euler_char_index: graph.index_formula_euler_char(),
        },
    }
}

fn class_echoes(classes: &[hcmu::ExtremalVertex]) -> Vec<ClassEcho> {
    classes
        .iter()
        .map(|v| ClassEcho {
            angle: hcmu::rational::format_rat(&v.angle),
            footballs: v.footballs.clone(),
            label: v.label,
        })
        .collect()
}

/// A label attaches to a whole pole class; naming any member football
/// reproduces it on reassembly.
fn labeled_members(classes: &[hcmu::ExtremalVertex]) -> Vec<(usize, usize)> {
    classes
        .iter()
        .filter_map(|v| v.label.map(|l| (v.footballs[0], l)))
        .collect()
}

/// A saddle's incidence list holds each cycle slot twice (far segment and
/// seam bank), in cycle order; every other entry is the cycle itself.
fn cut_cycle_of(s: &hcmu::SaddleVertex) -> Vec<(usize, u32)> {
    s.incident
        .iter()
        .step_by(2)
        .map(|(fb, m)| (*fb, m.0))
        .collect()
}

pub fn write_report(dir: &Path, report: &Report) -> Result<()> {
    let text = serde_json::to_string_pretty(report).context("cannot serialize report")?;
    let path = dir.join(REPORT_FILE);
    std::fs::write(&path, text + "\n")
        .with_context(|| format!("cannot write {}", path.display()))
}

pub fn read_report(dir: &Path) -> Result<Report> {
    let path = dir.join(REPORT_FILE);
    let text = std::fs::read_to_string(&path)
        .with_context(|| format!("cannot read {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("cannot parse {}", path.display()))
}
