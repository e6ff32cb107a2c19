//! Aggregated verification suite over one colligation: unitarity,
//! the defect identity sweep, the distinguished-boundary check, the
//! functional-equation sweep, and the palindrome coefficient identities.
//! Checks that require m = n = 2 (or a non-degenerate det A) are skipped
//! with a notice instead of failing.

use num_complex::Complex64;

use crate::error::Result;
use crate::report::{Check, VerificationReport};
use crate::transfer::BlockUnitary;
use crate::variety::{self, lemma_residual};

/// Tolerances for the verify suite; `strict()` halves every bound.
#[derive(Debug, Clone, Copy)]
pub struct VerifyTolerances {
    pub unitarity: f64,
    pub defect: f64,
    pub boundary: f64,
    pub lemma: f64,
    pub palindrome: f64,
}

impl Default for VerifyTolerances {
    fn default() -> Self {
        Self {
            unitarity: 1e-8,
            defect: 1e-10,
            boundary: 1e-4,
            lemma: 1e-9,
            palindrome: 1e-9,
        }
    }
}

impl VerifyTolerances {
    pub fn strict(self) -> Self {
        Self {
            unitarity: self.unitarity / 2.0,
            defect: self.defect / 2.0,
            boundary: self.boundary / 2.0,
            lemma: self.lemma / 2.0,
            palindrome: self.palindrome / 2.0,
        }
    }
}

/// Deterministic sweep of disk points avoiding 0 and the boundary.
fn disk_samples(count: usize) -> impl Iterator<Item = Complex64> {
    (0..count).map(move |k| {
        let t = k as f64 / count.max(1) as f64;
        Complex64::from_polar(0.12 + 0.78 * t, 2.39996322972865332 * k as f64 + 0.5)
    })
}

/// Runs the full suite. `samples` controls both the boundary sampling
/// density and the interior sweeps. Returns the report plus notices for
/// skipped checks.
pub fn verify(
    u: &BlockUnitary,
    samples: usize,
    tols: &VerifyTolerances,
) -> Result<(VerificationReport, Vec<String>)> {
    let mut report = VerificationReport::default();
    let mut notices = Vec::new();

    report.push(Check::new(
        "unitarity",
        u.unitarity_residual(),
        tols.unitarity,
        None,
    ));

    // defect identity sweep
    {
        let mut worst = 0.0_f64;
        let mut witness = None;
        for z in disk_samples(samples.max(16)) {
            match u.defect_residual(z) {
                Ok(r) if r > worst => {
                    worst = r;
                    witness = Some(z);
                }
                Ok(_) => {}
                Err(_) => {
                    worst = f64::INFINITY;
                    witness = Some(z);
                }
            }
        }
        report.push(Check::new("defect_identity", worst, tols.defect, witness));
    }

    // distinguished boundary
    match variety::is_distinguished(u, samples.max(16), tols.boundary) {
        Ok(sub) => {
            for check in sub.checks {
                report.push(check);
            }
        }
        Err(e) => {
            notices.push(format!("boundary check unavailable: {e}"));
            report.push(Check::new("boundary_w_sheets", f64::INFINITY, tols.boundary, None));
        }
    }

    if u.m() == 2 {
        // functional equation sweep, away from poles of p2
        let mut worst = 0.0_f64;
        let mut witness = None;
        match variety::variety_poly(u) {
            Ok(q) => {
                let p2 = q.w_slice(2);
                for z in disk_samples(samples.max(16)) {
                    if crate::numerics::roots::eval(&p2, z).norm() <= 1e-3 {
                        continue;
                    }
                    match lemma_residual(u, z) {
                        Ok(r) if r > worst => {
                            worst = r;
                            witness = Some(z);
                        }
                        Ok(_) => {}
                        Err(_) => {}
                    }
                }
                report.push(Check::new("functional_equation", worst, tols.lemma, witness));
            }
            Err(e) => notices.push(format!("functional equation unavailable: {e}")),
        }
    } else {
        notices.push(format!(
            "functional equation requires m = 2 (input has m = {}); skipped",
            u.m()
        ));
    }

    if u.m() == 2 && u.n() == 2 {
        match palindrome_residual(u) {
            Ok(Some(r)) => report.push(Check::new("palindrome", r, tols.palindrome, None)),
            Ok(None) => notices.push(
                "palindrome check needs |det A| > 1e-8 to fix the phase; skipped".into(),
            ),
            Err(e) => notices.push(format!("palindrome check unavailable: {e}")),
        }
    } else {
        notices.push(format!(
            "palindrome check requires m = n = 2 (input has m = {}, n = {}); skipped",
            u.m(),
            u.n()
        ));
    }

    Ok((report, notices))
}

/// Worst deviation in `b0 = e^{i theta} conj(b2)` and
/// `b1 = e^{i theta} conj(b1)`; `None` when det A is too small to fix
/// the unimodular phase.
pub fn palindrome_residual(u: &BlockUnitary) -> Result<Option<f64>> {
    let det_a = u.a().det()?;
    if det_a.norm() <= 1e-8 {
        return Ok(None);
    }
    let q = variety::variety_poly(u)?;
    let phase = u.d().det()? / det_a.conj();
    let b0 = q.coeff(0, 1);
    let b1 = q.coeff(1, 1);
    let b2 = q.coeff(2, 1);
    let r0 = (b0 - phase * b2.conj()).norm();
    let r1 = (b1 - phase * b1.conj()).norm();
    Ok(Some(r0.max(r1)))
}
