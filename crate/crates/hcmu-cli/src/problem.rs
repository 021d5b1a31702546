//! Problem-file ingestion: a small TOML document describing the prescribed
//! angles, parsed into an [`AngleProblem`] plus run settings.
//!
//! ```text
//! euler_char = 2
//! base_area = 12.566370614359172   # optional, default 4*pi
//! samples = 257                    # optional
//!
//! [[angles]]
//! value = "2"         # rational "p/q", integer, or decimal
//! saddle = true
//!
//! [[angles]]
//! value = "1/2"
//!
//! [tolerances]        # optional, names from the verification report
//! fd_scale = 10.0
//! ```
//!
//! Angles are in multiples of 2*pi, matching the cone-angle convention
//! 2*pi*alpha everywhere in the library.

use anyhow::{anyhow, bail, Context, Result};
use hcmu::rational::{parse_rat, rat_from_f64, rat_int};
use hcmu::{AngleProblem, Rat, Tolerances};
use serde::Deserialize;
use std::collections::BTreeSet;
use std::path::Path;

pub const DEFAULT_SAMPLES: usize = 257;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawProblem {
    euler_char: i64,
    base_area: Option<toml::Value>,
    samples: Option<usize>,
    angles: Vec<RawAngle>,
    tolerances: Option<std::collections::BTreeMap<String, f64>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAngle {
    value: toml::Value,
    #[serde(default)]
    saddle: bool,
}

/// Everything a run needs, after file values and flag overrides merge.
pub struct LoadedProblem {
    pub problem: AngleProblem,
    pub samples: usize,
    pub tolerances: Tolerances,
}

fn angle_value(v: &toml::Value, index: usize) -> Result<Rat> {
    let parsed = match v {
        toml::Value::String(s) => parse_rat(s).map_err(|e| anyhow!("{e}")),
        toml::Value::Integer(i) => Ok(rat_int(*i)),
        toml::Value::Float(x) => {
            rat_from_f64(*x).ok_or_else(|| anyhow!("value {x} is not a finite number"))
        }
        other => Err(anyhow!("expected a number or string, got {other}")),
    };
    parsed.with_context(|| format!("angles[{index}].value"))
}

fn area_value(v: &toml::Value) -> Result<f64> {
    let area = match v {
        toml::Value::Float(x) => *x,
        toml::Value::Integer(i) => *i as f64,
        toml::Value::String(s) => s
            .trim()
            .parse::<f64>()
            .with_context(|| format!("base_area {s:?} is not a decimal"))?,
        other => bail!("base_area must be a decimal, got {other}"),
    };
    Ok(area)
}

/// Reads and validates a problem file, applying command-line overrides.
pub fn load_problem(
    path: &Path,
    samples_override: Option<usize>,
    base_area_override: Option<f64>,
    tol_overrides: &[(String, f64)],
) -> Result<LoadedProblem> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read problem file {}", path.display()))?;
    let raw: RawProblem = toml::from_str(&text)
        .with_context(|| format!("cannot parse problem file {}", path.display()))?;

    let mut angles = Vec::with_capacity(raw.angles.len());
    let mut saddles = BTreeSet::new();
    for (i, a) in raw.angles.iter().enumerate() {
        angles.push(angle_value(&a.value, i)?);
        if a.saddle {
            saddles.insert(i);
        }
    }

    let base_area = match (base_area_override, &raw.base_area) {
        (Some(v), _) => v,
        (None, Some(v)) => area_value(v)?,
        (None, None) => 4.0 * std::f64::consts::PI,
    };
    let samples = samples_override
        .or(raw.samples)
        .unwrap_or(DEFAULT_SAMPLES);

    let mut tolerances = Tolerances::default();
    if let Some(map) = &raw.tolerances {
        for (name, value) in map {
            tolerances
                .set(name, *value)
                .with_context(|| format!("tolerances.{name}"))?;
        }
    }
    for (name, value) in tol_overrides {
        tolerances
            .set(name, *value)
            .with_context(|| format!("--tol {name}"))?;
    }

    let problem = AngleProblem::new(raw.euler_char, angles, saddles, base_area)?;
    Ok(LoadedProblem {
        problem,
        samples,
        tolerances,
    })
}

/// Parses one `--tol name=value` argument.
pub fn parse_tol_flag(arg: &str) -> Result<(String, f64), String> {
    let (name, value) = arg
        .split_once('=')
        .ok_or_else(|| format!("expected name=value, got {arg:?}"))?;
    let value: f64 = value
        .parse()
        .map_err(|e| format!("tolerance value in {arg:?}: {e}"))?;
    Ok((name.to_string(), value))
}
