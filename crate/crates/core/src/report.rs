use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// One verified property: its worst observed residual against the
/// configured tolerance, plus the witnessing point when there is one.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub worst_residual: f64,
    /// [re, im] of the sample point realizing the worst residual.
    pub witness: Option<[f64; 2]>,
}

impl Check {
    pub fn new(name: impl Into<String>, worst_residual: f64, tol: f64, witness: Option<Complex64>) -> Self {
        Self {
            name: name.into(),
            passed: worst_residual <= tol,
            worst_residual,
            witness: witness.map(|z| [z.re, z.im]),
        }
    }
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}
