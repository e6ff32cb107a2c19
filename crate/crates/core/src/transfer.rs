//! Block-unitary colligations and their transfer functions.
//!
//! A `BlockUnitary` is an (m+n)-by-(m+n) unitary partitioned as
//! [[A, B], [C, D]] with A of size m x m. Its transfer function
//! `psi(z) = A + z B (I - z D)^{-1} C` is a rational matrix inner
//! function, and two colligations produce the same transfer function
//! exactly when they are related by conjugation with diag(I, W) for a
//! unitary W.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

use crate::error::{Error, Result};
use crate::numerics::{
    haar_unitary_from_rng, op_norm, singular_values, unitarity_residual, ComplexMatrix,
};

/// Radius used to evaluate boundary quantities just inside the disk.
pub const BOUNDARY_RADIUS: f64 = 1.0 - 1e-6;

/// Relative smallest-singular-value threshold below which B is treated
/// as non-invertible in gauge recovery.
const B_INVERTIBLE_TOL: f64 = 1e-8;

/// Norm-one margin below which the gauge W stops being unique.
const NORM_ONE_TOL: f64 = 1e-8;

#[derive(Debug, Clone)]
pub struct BlockUnitary {
    m: usize,
    n: usize,
    a: ComplexMatrix,
    b: ComplexMatrix,
    c: ComplexMatrix,
    d: ComplexMatrix,
}

impl BlockUnitary {
    /// Splits a full (m+n)-by-(m+n) matrix into blocks, rejecting
    /// matrices that are not unitary within `tol` (Frobenius).
    pub fn from_matrix(u: &ComplexMatrix, m: usize, n: usize, tol: f64) -> Result<Self> {
        let this = Self::from_matrix_unchecked(u, m, n)?;
        let residual = this.unitarity_residual();
        if residual > tol {
            return Err(Error::NotUnitary { residual, tol });
        }
        Ok(this)
    }

    /// Splits without the unitarity check. Diagnostic paths (the verify
    /// suite, sensitivity tests) need to carry non-unitary block data.
    pub fn from_matrix_unchecked(u: &ComplexMatrix, m: usize, n: usize) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::Dimension("block sizes m, n must be at least 1".into()));
        }
        if u.rows() != m + n || u.cols() != m + n {
            return Err(Error::Dimension(format!(
                "expected {0}x{0} matrix for m={m}, n={n}, got {1}x{2}",
                m + n,
                u.rows(),
                u.cols()
            )));
        }
        Ok(Self {
            m,
            n,
            a: u.block(0, 0, m, m),
            b: u.block(0, m, m, n),
            c: u.block(m, 0, n, m),
            d: u.block(m, m, n, n),
        })
    }

    pub fn from_blocks(
        a: ComplexMatrix,
        b: ComplexMatrix,
        c: ComplexMatrix,
        d: ComplexMatrix,
        tol: f64,
    ) -> Result<Self> {
        let this = Self::from_blocks_unchecked(a, b, c, d)?;
        let residual = this.unitarity_residual();
        if residual > tol {
            return Err(Error::NotUnitary { residual, tol });
        }
        Ok(this)
    }

    pub fn from_blocks_unchecked(
        a: ComplexMatrix,
        b: ComplexMatrix,
        c: ComplexMatrix,
        d: ComplexMatrix,
    ) -> Result<Self> {
        let m = a.rows();
        let n = d.rows();
        if !a.is_square() || !d.is_square() || b.rows() != m || b.cols() != n || c.rows() != n || c.cols() != m {
            return Err(Error::Dimension(
                "blocks must be A: mxm, B: mxn, C: nxm, D: nxn".into(),
            ));
        }
        Ok(Self { m, n, a, b, c, d })
    }

    /// Haar-random element of the space of (m+n)-by-(m+n) unitaries,
    /// deterministic in `seed`.
    pub fn haar(m: usize, n: usize, seed: u64) -> Self {
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        Self::haar_from_rng(m, n, &mut rng)
    }

    pub fn haar_from_rng<R: rand::Rng>(m: usize, n: usize, rng: &mut R) -> Self {
        let u = haar_unitary_from_rng(m + n, rng);
        Self::from_matrix_unchecked(&u, m, n).expect("haar sample has the requested shape")
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn a(&self) -> &ComplexMatrix {
        &self.a
    }

    pub fn b(&self) -> &ComplexMatrix {
        &self.b
    }

    pub fn c(&self) -> &ComplexMatrix {
        &self.c
    }

    pub fn d(&self) -> &ComplexMatrix {
        &self.d
    }

    /// Reassembles the full (m+n)-by-(m+n) matrix.
    pub fn assemble(&self) -> ComplexMatrix {
        ComplexMatrix::from_blocks(&self.a, &self.b, &self.c, &self.d)
            .expect("blocks are conformal by construction")
    }

    pub fn unitarity_residual(&self) -> f64 {
        unitarity_residual(&self.assemble())
    }

    /// Transfer function `psi(z) = A + z B (I - z D)^{-1} C` (m x m).
    ///
    /// Well defined wherever `I - zD` is invertible; for a unitary
    /// colligation that covers the whole open disk.
    pub fn psi(&self, z: Complex64) -> Result<ComplexMatrix> {
        let factor = &ComplexMatrix::identity(self.n) - &self.d.scale(z);
        let x = factor.solve(&self.c)?;
        Ok(&self.a + &self.b.matmul(&x).scale(z))
    }

    /// `psi` evaluated by radial regularization: the argument is pulled
    /// onto radius `BOUNDARY_RADIUS` when it lies on or outside it.
    pub fn psi_regularized(&self, z: Complex64) -> Result<ComplexMatrix> {
        let r = z.norm();
        if r >= BOUNDARY_RADIUS && r > 0.0 {
            self.psi(z * (BOUNDARY_RADIUS / r))
        } else {
            self.psi(z)
        }
    }

    /// Adjoint-side transfer function `psi'(w) = D* + w B* (I - w A*)^{-1} C*` (n x n).
    pub fn psi_prime(&self, w: Complex64) -> Result<ComplexMatrix> {
        let a_star = self.a.adjoint();
        let factor = &ComplexMatrix::identity(self.m) - &a_star.scale(w);
        let x = factor.solve(&self.c.adjoint())?;
        Ok(&self.d.adjoint() + &self.b.adjoint().matmul(&x).scale(w))
    }

    /// Frobenius norm of the defect identity
    /// `(I - psi* psi) - (1 - |z|^2) C* (I - zbar D*)^{-1} (I - zD)^{-1} C`,
    /// which vanishes identically for a genuine unitary colligation.
    pub fn defect_residual(&self, z: Complex64) -> Result<f64> {
        let psi = self.psi(z)?;
        let lhs = &ComplexMatrix::identity(self.m) - &psi.adjoint().matmul(&psi);
        let factor = &ComplexMatrix::identity(self.n) - &self.d.scale(z);
        let x = factor.solve(&self.c)?;
        let rhs = x
            .adjoint()
            .matmul(&x)
            .scale(Complex64::new(1.0 - z.norm_sqr(), 0.0));
        Ok((&lhs - &rhs).frobenius_norm())
    }

    /// Conjugation by diag(V, W): returns diag(V,W)* U diag(V,W).
    /// With V = I this is the gauge move that preserves the transfer
    /// function; a general V additionally rotates the A block.
    pub fn conjugate(&self, v: &ComplexMatrix, w: &ComplexMatrix) -> Result<Self> {
        if v.rows() != self.m || !v.is_square() || w.rows() != self.n || !w.is_square() {
            return Err(Error::Dimension(
                "conjugation needs V: mxm and W: nxn".into(),
            ));
        }
        let v_star = v.adjoint();
        let w_star = w.adjoint();
        Self::from_blocks_unchecked(
            v_star.matmul(&self.a).matmul(v),
            v_star.matmul(&self.b).matmul(w),
            w_star.matmul(&self.c).matmul(v),
            w_star.matmul(&self.d).matmul(w),
        )
    }
}

/// Moment test for equality of transfer functions: A must agree, and
/// `B D^k C` must agree for k = 0, ..., 2n-1. Cayley–Hamilton on the
/// degree-n blocks makes the first 2n moments determining.
pub fn transfer_equal(u: &BlockUnitary, u1: &BlockUnitary, tol: f64) -> Result<bool> {
    if u.m != u1.m || u.n != u1.n {
        return Err(Error::Dimension(format!(
            "block dimensions differ: ({}, {}) vs ({}, {})",
            u.m, u.n, u1.m, u1.n
        )));
    }
    if (&u.a - &u1.a).max_abs() > tol {
        return Ok(false);
    }
    let mut lhs = u.c.clone();
    let mut rhs = u1.c.clone();
    for _ in 0..2 * u.n {
        let diff = (&u.b.matmul(&lhs) - &u1.b.matmul(&rhs)).max_abs();
        if diff > tol {
            return Ok(false);
        }
        lhs = u.d.matmul(&lhs);
        rhs = u1.d.matmul(&rhs);
    }
    Ok(true)
}

/// Result of gauge recovery.
#[derive(Debug, Clone)]
pub enum GaugeOutcome {
    Equivalent {
        /// n x n unitary with B1 = BW, C1 = W*C, D1 = W*DW.
        w: ComplexMatrix,
        /// False when ||A|| = 1 within tolerance; the recovered W is
        /// then the canonical representative (identity-biased on the
        /// undetermined subspace), not the only one.
        unique: bool,
    },
    NotEquivalent,
}

/// Recovers the unitary W relating two colligations with the same
/// transfer function. Returns `NotEquivalent` when the moment equations
/// fail or no unitary satisfies the block equations within `tol`.
pub fn find_gauge_w(u: &BlockUnitary, u1: &BlockUnitary, tol: f64) -> Result<GaugeOutcome> {
    if !transfer_equal(u, u1, tol)? {
        return Ok(GaugeOutcome::NotEquivalent);
    }
    let n = u.n;

    let candidate = if u.m == n && b_invertible(&u.b) {
        u.b.solve(&u1.b)?
    } else {
        gauge_least_squares(u, u1)?
    };
    let w = polar_unitary(&candidate)?;

    let scale = 1.0_f64
        .max(u.b.max_abs())
        .max(u.c.max_abs())
        .max(u.d.max_abs());
    let eq_b = (&u1.b - &u.b.matmul(&w)).max_abs();
    let eq_c = (&u1.c - &w.adjoint().matmul(&u.c)).max_abs();
    let eq_d = (&u1.d - &w.adjoint().matmul(&u.d).matmul(&w)).max_abs();
    if eq_b > tol * scale || eq_c > tol * scale || eq_d > tol * scale {
        return Ok(GaugeOutcome::NotEquivalent);
    }
    let unique = op_norm(&u.a) < 1.0 - NORM_ONE_TOL;
    Ok(GaugeOutcome::Equivalent { w, unique })
}

fn b_invertible(b: &ComplexMatrix) -> bool {
    match singular_values(b) {
        Ok(svs) => {
            let smax = svs[0];
            let smin = *svs.last().unwrap();
            smax > 0.0 && smin > B_INVERTIBLE_TOL * smax
        }
        Err(_) => false,
    }
}

/// Least-squares gauge candidate for the degenerate (non-invertible B)
/// case: stacks the linear equations B W = B1, C* W = C1*, D W = W D1,
/// biased toward the identity on the undetermined subspace.
fn gauge_least_squares(u: &BlockUnitary, u1: &BlockUnitary) -> Result<ComplexMatrix> {
    let n = u.n;
    let eye = ComplexMatrix::identity(n);

    // column-major vectorization: vec(A X B) = (B^T kron A) vec(X)
    let transpose = |m: &ComplexMatrix| {
        ComplexMatrix::from_fn(m.cols(), m.rows(), |i, j| m[(j, i)])
    };
    let vec_cm = |m: &ComplexMatrix| {
        ComplexMatrix::from_fn(m.rows() * m.cols(), 1, |i, _| m[(i % m.rows(), i / m.rows())])
    };

    let m1 = eye.kron(&u.b); // B W = B1
    let m2 = eye.kron(&u.c.adjoint()); // C* W = C1*
    let m3 = &eye.kron(&u.d) - &transpose(&u1.d).kron(&eye); // D W - W D1 = 0

    let total_rows = m1.rows() + m2.rows() + m3.rows();
    let design = ComplexMatrix::from_fn(total_rows, n * n, |i, j| {
        if i < m1.rows() {
            m1[(i, j)]
        } else if i < m1.rows() + m2.rows() {
            m2[(i - m1.rows(), j)]
        } else {
            m3[(i - m1.rows() - m2.rows(), j)]
        }
    });
    let b1_vec = vec_cm(&u1.b);
    let c1s_vec = vec_cm(&u1.c.adjoint());
    let target = ComplexMatrix::from_fn(total_rows, 1, |i, _| {
        if i < b1_vec.rows() {
            b1_vec[(i, 0)]
        } else if i < b1_vec.rows() + c1s_vec.rows() {
            c1s_vec[(i - b1_vec.rows(), 0)]
        } else {
            Complex64::new(0.0, 0.0)
        }
    });

    // regularized normal equations, pulled toward vec(I)
    let scale = design.max_abs().max(1.0);
    let eps = 1e-10 * scale * scale;
    let normal = &design.adjoint().matmul(&design)
        + &ComplexMatrix::identity(n * n).scale(Complex64::new(eps, 0.0));
    let rhs = &design.adjoint().matmul(&target) + &vec_cm(&eye).scale(Complex64::new(eps, 0.0));
    let x = normal.solve(&rhs)?;
    Ok(ComplexMatrix::from_fn(n, n, |i, j| x[(j * n + i, 0)]))
}

/// Unitary polar factor by Newton iteration X <- (X + X^{-*}) / 2.
fn polar_unitary(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    let mut x = m.clone();
    for _ in 0..50 {
        let inv_adj = x.adjoint().solve(&ComplexMatrix::identity(x.rows()))?;
        x = (&x + &inv_adj).scale(Complex64::new(0.5, 0.0));
        if unitarity_residual(&x) < 1e-14 {
            break;
        }
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{eig_small, haar_unitary};

    use crate::fixtures::{blaschke_unitary, swap_unitary};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn psi_of_swap_is_z() {
        let u = swap_unitary();
        let z = c(0.3, -0.45);
        let psi = u.psi(z).unwrap();
        let expected = ComplexMatrix::identity(2).scale(z);
        assert!((&psi - &expected).frobenius_norm() < 1e-14);
    }

    #[test]
    fn psi_at_zero_is_a() {
        let u = BlockUnitary::haar(2, 2, 99);
        let psi = u.psi(c(0.0, 0.0)).unwrap();
        assert!((&psi - u.a()).frobenius_norm() < 1e-15);
    }

    #[test]
    fn psi_of_blaschke_is_scalar_blaschke() {
        let u = blaschke_unitary();
        let z = c(0.21, 0.4);
        let b = (c(0.6, 0.0) - z) / (c(1.0, 0.0) - z * 0.6);
        let psi = u.psi(z).unwrap();
        let expected = ComplexMatrix::identity(2).scale(b);
        assert!((&psi - &expected).frobenius_norm() < 1e-13);
    }

    #[test]
    fn psi_prime_at_zero_is_d_star() {
        let u = BlockUnitary::haar(2, 2, 5);
        let pp = u.psi_prime(c(0.0, 0.0)).unwrap();
        assert!((&pp - &u.d().adjoint()).frobenius_norm() < 1e-15);
    }

    #[test]
    fn psi_prime_of_swap_is_w() {
        let u = swap_unitary();
        let w = c(-0.1, 0.62);
        let pp = u.psi_prime(w).unwrap();
        assert!((&pp - &ComplexMatrix::identity(2).scale(w)).frobenius_norm() < 1e-14);
    }

    #[test]
    fn psi_prime_pairs_with_psi_spectrally() {
        // det(psi'(w) - zI) = 0 at the eigenvalue pairs of psi(z)
        let u = BlockUnitary::haar(2, 2, 31);
        let z = c(0.4, 0.17);
        let psi = u.psi(z).unwrap();
        for w in eig_small(&psi).unwrap() {
            if w.norm() >= 1.0 {
                continue;
            }
            let m = &u.psi_prime(w).unwrap() - &ComplexMatrix::identity(2).scale(z);
            let det = m.det().unwrap();
            assert!(det.norm() < 1e-9, "|det| = {}", det.norm());
        }
    }

    #[test]
    fn defect_residual_haar() {
        let u = BlockUnitary::haar(2, 2, 123);
        let r = u.defect_residual(c(0.37, 0.2)).unwrap();
        assert!(r <= 1e-10, "residual {r}");
    }

    #[test]
    fn defect_residual_at_zero() {
        let u = BlockUnitary::haar(2, 2, 124);
        let r = u.defect_residual(c(0.0, 0.0)).unwrap();
        assert!(r <= 1e-12);
    }

    #[test]
    fn defect_residual_detects_non_unitary() {
        let u = BlockUnitary::haar(2, 2, 125);
        let tampered = BlockUnitary::from_blocks_unchecked(
            u.a().scale(c(1.01, 0.0)),
            u.b().clone(),
            u.c().clone(),
            u.d().clone(),
        )
        .unwrap();
        let r = tampered.defect_residual(c(0.37, 0.2)).unwrap();
        assert!(r > 1e-3, "residual {r}");
    }

    #[test]
    fn transfer_equal_reflexive() {
        let u = BlockUnitary::haar(2, 2, 8);
        assert!(transfer_equal(&u, &u, 1e-10).unwrap());
    }

    #[test]
    fn transfer_equal_under_w_conjugation() {
        for seed in 0..20 {
            let u = BlockUnitary::haar(2, 2, seed);
            let w0 = haar_unitary(2, seed + 1000);
            let u1 = u.conjugate(&ComplexMatrix::identity(2), &w0).unwrap();
            assert!(transfer_equal(&u, &u1, 1e-10).unwrap(), "seed {seed}");
        }
    }

    #[test]
    fn transfer_equal_rejects_independent_samples() {
        for seed in 0..100 {
            let u = BlockUnitary::haar(2, 2, seed);
            let u1 = BlockUnitary::haar(2, 2, seed + 7919);
            assert!(!transfer_equal(&u, &u1, 1e-8).unwrap(), "seed {seed}");
        }
    }

    #[test]
    fn transfer_equal_dimension_guard() {
        let u = BlockUnitary::haar(2, 2, 1);
        let v = BlockUnitary::haar(2, 3, 1);
        assert!(matches!(
            transfer_equal(&u, &v, 1e-8),
            Err(Error::Dimension(_))
        ));
    }

    #[test]
    fn gauge_self_is_identity() {
        let u = BlockUnitary::haar(2, 2, 40);
        match find_gauge_w(&u, &u, 1e-9).unwrap() {
            GaugeOutcome::Equivalent { w, unique } => {
                assert!(unique);
                assert!((&w - &ComplexMatrix::identity(2)).frobenius_norm() < 1e-10);
            }
            GaugeOutcome::NotEquivalent => panic!("self must be equivalent"),
        }
    }

    #[test]
    fn gauge_recovers_conjugator() {
        for seed in 0..20 {
            let u = BlockUnitary::haar(2, 2, seed);
            let w0 = haar_unitary(2, seed + 555);
            let u1 = u.conjugate(&ComplexMatrix::identity(2), &w0).unwrap();
            match find_gauge_w(&u, &u1, 1e-9).unwrap() {
                GaugeOutcome::Equivalent { w, .. } => {
                    assert!(
                        (&w - &w0).frobenius_norm() < 1e-8,
                        "seed {seed}: {}",
                        (&w - &w0).frobenius_norm()
                    );
                }
                GaugeOutcome::NotEquivalent => panic!("conjugate pair, seed {seed}"),
            }
        }
    }

    #[test]
    fn gauge_rejects_unrelated() {
        let u = BlockUnitary::haar(2, 2, 2);
        let u1 = BlockUnitary::haar(2, 2, 3);
        assert!(matches!(
            find_gauge_w(&u, &u1, 1e-9).unwrap(),
            GaugeOutcome::NotEquivalent
        ));
    }

    #[test]
    fn gauge_degenerate_b_swap_case() {
        // swap colligation has ||A|| = 0 but B = I invertible; force the
        // least-squares path with a colligation whose B is singular:
        // permutation assembling A with a norm-one part.
        let full = ComplexMatrix::from_real_rows(&[
            &[1.0, 0.0, 0.0, 0.0],
            &[0.0, 0.0, 1.0, 0.0],
            &[0.0, 1.0, 0.0, 0.0],
            &[0.0, 0.0, 0.0, 1.0],
        ])
        .unwrap();
        let u = BlockUnitary::from_matrix(&full, 2, 2, 1e-12).unwrap();
        assert!(!b_invertible(u.b()));
        match find_gauge_w(&u, &u, 1e-7).unwrap() {
            GaugeOutcome::Equivalent { w, unique } => {
                assert!(!unique, "||A|| = 1 here, W cannot be unique");
                assert!(unitarity_residual(&w) < 1e-9);
                // canonical choice: identity on the undetermined part
                assert!((&w - &ComplexMatrix::identity(2)).frobenius_norm() < 1e-6);
            }
            GaugeOutcome::NotEquivalent => panic!("self pair must be equivalent"),
        }
    }

    #[test]
    fn non_unitary_rejected_by_checked_constructor() {
        let m = ComplexMatrix::identity(4).scale(c(1.1, 0.0));
        assert!(matches!(
            BlockUnitary::from_matrix(&m, 2, 2, 1e-8),
            Err(Error::NotUnitary { .. })
        ));
    }
}
