//! Check results and tolerance configuration shared by the verifiers.

use serde::{Deserialize, Serialize};

/// One named residual check.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub residual: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl Check {
    pub fn new(name: &str, residual: f64, tolerance: f64) -> Self {
        Check {
            name: name.to_string(),
            residual,
            tolerance,
            passed: residual.is_finite() && residual <= tolerance,
        }
    }

    /// A check that failed for a structural reason rather than by residual.
    pub fn structural_failure(name: &str, tolerance: f64) -> Self {
        Check {
            name: name.to_string(),
            residual: f64::INFINITY,
            tolerance,
            passed: false,
        }
    }
}

/// Outcome of a verification run: every check, pass or fail, in a stable
/// order. Failures are encoded here, never as errors.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failed_names(&self) -> Vec<&str> {
        self.checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| c.name.as_str())
            .collect()
    }

    pub fn merge(&mut self, other: VerificationReport) {
        self.checks.extend(other.checks);
    }
}

/// Tolerance knobs for the verifiers.
///
/// `fd_scale` is the constant C in the C*h^2 error model used for every
/// finite-difference residual (h is the local grid spacing; each check
/// multiplies in its own curvature-scale factor). The remaining fields are
/// flat relative tolerances for identities that are exact in real
/// arithmetic, quadrature-level, or pointwise-comparison checks.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct Tolerances {
    /// C in the C*h^2 stencil error model (default 10).
    pub fd_scale: f64,
    /// Relative tolerance on the area identity (default 1e-8).
    pub area_rel: f64,
    /// Relative tolerance for exact-in-real-arithmetic comparisons (1e-12).
    pub exact_rel: f64,
    /// Quadrature-level relative tolerance, e.g. meridian lengths (1e-8).
    pub length_rel: f64,
    /// Pointwise profile-ratio comparisons along glued meridians (1e-8).
    pub ratio_rel: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            fd_scale: 10.0,
            area_rel: 1e-8,
            exact_rel: 1e-12,
            length_rel: 1e-8,
            ratio_rel: 1e-8,
        }
    }
}

#[derive(Debug, thiserror::Error)]
#[error("unknown tolerance name {0:?} (known: fd_scale, area_rel, exact_rel, length_rel, ratio_rel)")]
pub struct UnknownTolerance(pub String);

impl Tolerances {
    /// Sets a field by name; used by the command-line `--tol name=value`.
    pub fn set(&mut self, name: &str, value: f64) -> Result<(), UnknownTolerance> {
        match name {
            "fd_scale" => self.fd_scale = value,
            "area_rel" => self.area_rel = value,
            "exact_rel" => self.exact_rel = value,
            "length_rel" => self.length_rel = value,
            "ratio_rel" => self.ratio_rel = value,
            _ => return Err(UnknownTolerance(name.to_string())),
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn check_passes_iff_residual_within_tolerance() {
        assert!(Check::new("a", 1e-9, 1e-8).passed);
        assert!(!Check::new("a", 2e-8, 1e-8).passed);
        assert!(!Check::new("a", f64::NAN, 1e-8).passed);
        assert!(Check::new("edge", 1e-8, 1e-8).passed);
    }

    #[test]
    fn report_aggregates() {
        let mut r = VerificationReport::new();
        r.push(Check::new("one", 0.0, 0.0));
        r.push(Check::new("two", 3.0, 1.0));
        assert!(!r.passed());
        assert_eq!(r.failed_names(), vec!["two"]);
        assert!(r.check("one").unwrap().passed);
    }

    #[test]
    fn tolerance_set_by_name() {
        let mut t = Tolerances::default();
        t.set("fd_scale", 20.0).unwrap();
        assert_eq!(t.fd_scale, 20.0);
        assert!(t.set("bogus", 1.0).is_err());
    }
}
