//! Plot-ready build artifacts: one CSV profile table per football and a DOT
//! description of the gluing graph. Both formats are stable contracts:
//! profiles carry 17-significant-digit decimals so a re-read bit-matches,
//! and the DOT file lists one vertex per cone point, one edge per seam.

use crate::report::{fmt_f64, parse_f64};
use anyhow::{bail, Context, Result};
use hcmu::rational::{rat_int, Rat};
use hcmu::{FootballProfile, GluingGraph, ProfileSample, SeamSpan};
use std::path::Path;

pub fn csv_name(index: usize) -> String {
    format!("football_{index:02}.csv")
}

pub const DOT_FILE: &str = "graph.dot";

pub fn write_profile_csv(path: &Path, profile: &FootballProfile) -> Result<()> {
    let mut text = String::from("u,k,f\n");
    for s in &profile.samples {
        text.push_str(&fmt_f64(s.u));
        text.push(',');
        text.push_str(&fmt_f64(s.k));
        text.push(',');
        text.push_str(&fmt_f64(s.f));
        text.push('\n');
    }
    std::fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
}

pub fn read_profile_csv(path: &Path) -> Result<Vec<ProfileSample>> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read {}", path.display()))?;
    let mut lines = text.lines();
    match lines.next() {
        Some("u,k,f") => {}
        other => bail!("{}: expected header \"u,k,f\", got {other:?}", path.display()),
    }
    let mut samples = Vec::new();
    for (i, line) in lines.enumerate() {
        let mut cols = line.split(',');
        let mut col = |name: &str| -> Result<f64> {
            let cell = cols
                .next()
                .with_context(|| format!("{}: row {}: missing {name}", path.display(), i + 2))?;
            parse_f64(cell).with_context(|| format!("{}: row {}", path.display(), i + 2))
        };
        samples.push(ProfileSample {
            u: col("u")?,
            k: col("k")?,
            f: col("f")?,
        });
        if cols.next().is_some() {
            bail!("{}: row {}: expected 3 columns", path.display(), i + 2);
        }
    }
    Ok(samples)
}

/// Formats a cone angle 2*pi*angle as a multiple of pi: 2 -> "4π",
/// 1/2 -> "π", 1/3 -> "2π/3".
pub fn cone_label(angle: &Rat) -> String {
    let two = angle + angle;
    let (p, q) = (two.numer(), two.denom());
    let pi = if *p == 1.into() {
        "π".to_string()
    } else {
        format!("{p}π")
    };
    if *q == 1.into() {
        pi
    } else {
        format!("{pi}/{q}")
    }
}

fn position_in(classes: &[hcmu::ExtremalVertex], fb: usize) -> usize {
    classes
        .iter()
        .position(|v| v.footballs.contains(&fb))
        .expect("every football belongs to one class per side")
}

/// One vertex per cone point (saddles, then pole classes), one edge per
/// seam, each seam joining its saddle to the pole class its arcs reach.
pub fn write_dot(path: &Path, graph: &GluingGraph) -> Result<()> {
    let mut out = String::from("graph gluing {\n");
    out.push_str("  // cone angles as multiples of pi; edge F0.m1~F2.m0 glues\n");
    out.push_str("  // meridian 1 of football 0 to meridian 0 of football 2\n");
    for (i, s) in graph.saddles.iter().enumerate() {
        let label = cone_label(&rat_int(s.angle as i64));
        out.push_str(&format!("  s{i} [label=\"{label}\" shape=diamond];\n"));
    }
    for (i, v) in graph.max_vertices.iter().enumerate() {
        out.push_str(&format!("  mx{i} [label=\"{}\"];\n", cone_label(&v.angle)));
    }
    for (i, v) in graph.min_vertices.iter().enumerate() {
        out.push_str(&format!(
            "  mn{i} [label=\"{}\" shape=box];\n",
            cone_label(&v.angle)
        ));
    }
    for e in &graph.edges {
        let pole = match e.span {
            SeamSpan::SaddleToMin => format!("mn{}", position_in(&graph.min_vertices, e.a.0)),
            SeamSpan::MaxToSaddle => format!("mx{}", position_in(&graph.max_vertices, e.a.0)),
        };
        out.push_str(&format!(
            "  s{} -- {pole} [label=\"F{}.m{}~F{}.m{}\"];\n",
            e.saddle, e.a.0, e.a.1 .0, e.b.0, e.b.1 .0
        ));
    }
    out.push_str("}\n");
    std::fs::write(path, out).with_context(|| format!("cannot write {}", path.display()))
}

/// The degenerate graph of a single saddle-free football: two cone points,
/// no seams.
pub fn write_single_dot(path: &Path, alpha: &Rat, beta: &Rat) -> Result<()> {
    let out = format!(
        "graph gluing {{\n  // single football, no gluing seams\n  mx0 [label=\"{}\"];\n  mn0 [label=\"{}\" shape=box];\n}}\n",
        cone_label(alpha),
        cone_label(beta)
    );
    std::fs::write(path, out).with_context(|| format!("cannot write {}", path.display()))
}
