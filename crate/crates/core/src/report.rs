//! Named residual checks and their aggregation.

use serde::{Deserialize, Serialize};

/// One numerical identity check: the residual of the defect and the
/// threshold it was judged against.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Check {
    /// A check passes iff `residual <= tolerance`. NaN residuals never pass.
    pub fn new(name: impl Into<String>, residual: f64, tolerance: f64) -> Self {
        Check {
            name: name.into(),
            residual,
            tolerance,
            pass: residual <= tolerance,
            note: None,
        }
    }

    /// Absolute tolerance scaled by `max(1, scale)`.
    pub fn scaled(name: impl Into<String>, residual: f64, tol: f64, scale: f64) -> Self {
        Self::new(name, residual, tol * scale.max(1.0))
    }

    /// A check where the residual must be strictly above a threshold, e.g. a
    /// smallest singular value. Stored with `residual = threshold - value`
    /// clipped at zero so that the uniform `residual <= tolerance` reading holds.
    pub fn lower_bound(name: impl Into<String>, value: f64, threshold: f64) -> Self {
        let mut c = Check::new(name, (threshold - value).max(0.0), 0.0);
        c.pass = value > threshold;
        if !c.pass && c.residual == 0.0 {
            c.residual = f64::MIN_POSITIVE;
        }
        c.note = Some(format!("value {value:e} must exceed {threshold:e}"));
        c
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

/// Ordered list of checks. Order is insertion order and is part of the
/// output contract.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
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

    /// Appends every check of `other`, prefixing names with `prefix.`.
    pub fn extend_prefixed(&mut self, prefix: &str, other: VerificationReport) {
        for mut c in other.checks {
            if !prefix.is_empty() {
                c.name = format!("{prefix}.{}", c.name);
            }
            self.checks.push(c);
        }
    }

    pub fn overall_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// Residual of a named check; panics if absent. Convenience for tests.
    pub fn residual(&self, name: &str) -> f64 {
        match self.get(name) {
            Some(c) => c.residual,
            None => panic!(
                "no check named `{name}` (have: {:?})",
                self.checks.iter().map(|c| &c.name).collect::<Vec<_>>()
            ),
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn max_residual(&self) -> f64 {
        self.checks.iter().map(|c| c.residual).fold(0.0, f64::max)
    }
}

impl FromIterator<Check> for VerificationReport {
    fn from_iter<I: IntoIterator<Item = Check>>(iter: I) -> Self {
        VerificationReport {
            checks: iter.into_iter().collect(),
        }
    }
}
