//! Moduli invariants for two-sheeted-by-two-sheeted varieties: the
//! eigenvalues of A, the eigenvalues of D, and tr(BC) classify the
//! variety of a 4x4 colligation completely, and the variety polynomial
//! can be rebuilt from them in closed form.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

use crate::error::{Error, Result};
use crate::numerics::{eig_small, haar_unitary_from_rng, multiset_match};
use crate::transfer::BlockUnitary;
use crate::variety::BivariatePoly;

/// |det A| below which reconstruction refuses to proceed.
pub const DET_A_LIMIT: f64 = 1e-8;
/// Slack allowed on the necessary feasibility conditions.
const FEASIBILITY_TOL: f64 = 1e-8;
/// Default multiset-matching tolerance for the same-variety decision.
pub const SAME_VARIETY_TOL: f64 = 1e-7;

/// The invariant triple (eigenvalues of A, eigenvalues of D, tr BC).
#[derive(Debug, Clone)]
pub struct Invariants {
    eig_a: [Complex64; 2],
    eig_d: [Complex64; 2],
    tr_bc: Complex64,
}

impl Invariants {
    /// Validates the two necessary feasibility conditions: both
    /// eigenvalue pairs lie in the closed unit disk (blocks of a
    /// unitary are contractions) and |det A| = |det D|.
    pub fn new(eig_a: [Complex64; 2], eig_d: [Complex64; 2], tr_bc: Complex64) -> Result<Self> {
        for (label, pair) in [("A", &eig_a), ("D", &eig_d)] {
            for e in pair {
                if !e.re.is_finite() || !e.im.is_finite() {
                    return Err(Error::NonFinite(format!("eigenvalue of {label}")));
                }
                if e.norm() > 1.0 + FEASIBILITY_TOL {
                    return Err(Error::Infeasible(format!(
                        "eigenvalue {e} of {label} lies outside the closed unit disk"
                    )));
                }
            }
        }
        if !tr_bc.re.is_finite() || !tr_bc.im.is_finite() {
            return Err(Error::NonFinite("tr BC".into()));
        }
        let det_a = (eig_a[0] * eig_a[1]).norm();
        let det_d = (eig_d[0] * eig_d[1]).norm();
        if (det_a - det_d).abs() > FEASIBILITY_TOL {
            return Err(Error::Infeasible(format!(
                "|det A| = {det_a:.6e} and |det D| = {det_d:.6e} must agree"
            )));
        }
        Ok(Self { eig_a, eig_d, tr_bc })
    }

    pub fn eig_a(&self) -> &[Complex64; 2] {
        &self.eig_a
    }

    pub fn eig_d(&self) -> &[Complex64; 2] {
        &self.eig_d
    }

    pub fn tr_bc(&self) -> Complex64 {
        self.tr_bc
    }
}

/// Extracts the invariant triple of a 4x4 colligation.
pub fn invariants(u: &BlockUnitary) -> Result<Invariants> {
    if u.m() != 2 || u.n() != 2 {
        return Err(Error::Dimension(format!(
            "invariants are defined for m = n = 2, got ({}, {})",
            u.m(),
            u.n()
        )));
    }
    let ea = eig_small(u.a())?;
    let ed = eig_small(u.d())?;
    let tr_bc = u.b().matmul(u.c()).trace();
    Invariants::new([ea[0], ea[1]], [ed[0], ed[1]], tr_bc)
}

/// Decides whether two colligations cut out the same variety:
/// matching eigenvalue multisets for A and for D, and equal tr(BC).
pub fn same_variety(u: &BlockUnitary, u0: &BlockUnitary, tol: f64) -> Result<bool> {
    let i = invariants(u)?;
    let i0 = invariants(u0)?;
    Ok(multiset_match(i.eig_a(), i0.eig_a(), tol)
        && multiset_match(i.eig_d(), i0.eig_d(), tol)
        && (i.tr_bc() - i0.tr_bc()).norm() <= tol)
}

/// Rebuilds the variety polynomial from the invariant triple:
///
/// * `p2(z) = (z mu1 - 1)(z mu2 - 1)`
/// * `p0(z) = e^{i theta} (z - conj mu1)(z - conj mu2)` with
///   `e^{i theta} = det D / conj(det A)`
/// * `p1(z) = b2 z^2 + b1 z + b0` with `b2 = -e^{i theta}(conj l1 + conj l2)`,
///   `b0 = e^{i theta} conj(b2) = -(l1 + l2)`, and
///   `b1 = (l1 + l2)(mu1 + mu2) - tr BC`.
///
/// Refuses when |det A| is below `DET_A_LIMIT`; the degenerate cases
/// are limits of these, not values of the closed form.
pub fn reconstruct_q(inv: &Invariants) -> Result<BivariatePoly> {
    let [l1, l2] = *inv.eig_a();
    let [mu1, mu2] = *inv.eig_d();
    let det_a = l1 * l2;
    if det_a.norm() <= DET_A_LIMIT {
        return Err(Error::DegenerateDeterminant {
            det_a: det_a.norm(),
            limit: DET_A_LIMIT,
        });
    }
    let det_d = mu1 * mu2;
    let phase = det_d / det_a.conj();

    let one = Complex64::new(1.0, 0.0);
    // ascending z-coefficients of the three w-slices
    let p2 = [one, -(mu1 + mu2), det_d];
    let p0 = [
        phase * (mu1.conj() * mu2.conj()),
        -phase * (mu1.conj() + mu2.conj()),
        phase,
    ];
    let b2 = -phase * (l1.conj() + l2.conj());
    let b0 = -(l1 + l2);
    let b1 = (l1 + l2) * (mu1 + mu2) - inv.tr_bc();
    let p1 = [b0, b1, b2];

    BivariatePoly::new(
        (0..3)
            .map(|i| vec![p0[i], p1[i], p2[i]])
            .collect(),
    )
}

/// Orbit generator for tests: conjugates by diag(V, W) with Haar-random
/// 2x2 V and W derived from `seed`. The invariants are preserved, while
/// the transfer function generically is not (V rotates the A block).
pub fn gauge_orbit_sample(u: &BlockUnitary, seed: u64) -> Result<BlockUnitary> {
    if u.m() != 2 || u.n() != 2 {
        return Err(Error::Dimension(format!(
            "orbit sampling is defined for m = n = 2, got ({}, {})",
            u.m(),
            u.n()
        )));
    }
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let v = haar_unitary_from_rng(2, &mut rng);
    let w = haar_unitary_from_rng(2, &mut rng);
    u.conjugate(&v, &w)
}
