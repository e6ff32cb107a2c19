//! Eigenvalues for matrices of dimension at most 4, via the
//! characteristic polynomial: closed-form quadratic for 2x2, root
//! iteration on the Faddeev–LeVerrier coefficients above that.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numerics::matrix::ComplexMatrix;
use crate::numerics::roots::poly_roots;

const MAX_EIG_DIM: usize = 4;

/// Eigenvalue multiset of a square matrix of dimension <= 4.
pub fn eig_small(m: &ComplexMatrix) -> Result<Vec<Complex64>> {
    if !m.is_square() {
        return Err(Error::Dimension(format!(
            "eigenvalues of non-square {}x{} matrix",
            m.rows(),
            m.cols()
        )));
    }
    let n = m.rows();
    if n > MAX_EIG_DIM {
        return Err(Error::Dimension(format!(
            "eigenvalue solver capped at {MAX_EIG_DIM}x{MAX_EIG_DIM}, got {n}x{n}"
        )));
    }
    match n {
        1 => Ok(vec![m[(0, 0)]]),
        2 => {
            let tr = m.trace();
            let det = m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)];
            // roots of x^2 - tr x + det
            let disc = (tr * tr - det * 4.0).sqrt();
            let q = if (tr.conj() * disc).re >= 0.0 {
                (tr + disc) * 0.5
            } else {
                (tr - disc) * 0.5
            };
            if q.norm() == 0.0 {
                Ok(vec![tr * 0.5, tr * 0.5])
            } else {
                Ok(vec![q, det / q])
            }
        }
        _ => poly_roots(&char_poly(m)),
    }
}

/// Characteristic polynomial det(xI - M) in ascending coefficients,
/// by the Faddeev–LeVerrier recursion.
pub fn char_poly(m: &ComplexMatrix) -> Vec<Complex64> {
    let n = m.rows();
    let mut coeffs = vec![Complex64::new(0.0, 0.0); n + 1];
    coeffs[n] = Complex64::new(1.0, 0.0);
    let mut aux = ComplexMatrix::identity(n);
    for k in 1..=n {
        let prod = m.matmul(&aux);
        let c = -prod.trace() / (k as f64);
        coeffs[n - k] = c;
        aux = &prod + &ComplexMatrix::identity(n).scale(c);
    }
    coeffs
}

/// Minimal max-distance over all pairings of two equal-size multisets.
/// Sizes here never exceed 4, so exhaustive assignment is exact.
pub fn multiset_max_distance(a: &[Complex64], b: &[Complex64]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::Dimension(format!(
            "multiset sizes differ: {} vs {}",
            a.len(),
            b.len()
        )));
    }
    let n = a.len();
    if n == 0 {
        return Ok(0.0);
    }
    let mut used = vec![false; n];
    fn go(a: &[Complex64], b: &[Complex64], i: usize, used: &mut [bool], worst: f64) -> f64 {
        if i == a.len() {
            return worst;
        }
        let mut best = f64::INFINITY;
        for j in 0..b.len() {
            if used[j] {
                continue;
            }
            used[j] = true;
            let w = worst.max((a[i] - b[j]).norm());
            best = best.min(go(a, b, i + 1, used, w));
            used[j] = false;
        }
        best
    }
    Ok(go(a, b, 0, &mut used, 0.0))
}

/// True when the multisets match entrywise within `tol` under the best pairing.
pub fn multiset_match(a: &[Complex64], b: &[Complex64], tol: f64) -> bool {
    matches!(multiset_max_distance(a, b), Ok(d) if d <= tol)
}

/// Singular values in descending order; the shorter side must have
/// dimension <= 4 (eigenvalues of the Gram matrix).
pub fn singular_values(m: &ComplexMatrix) -> Result<Vec<f64>> {
    let gram = if m.rows() <= m.cols() {
        m.matmul(&m.adjoint())
    } else {
        m.adjoint().matmul(m)
    };
    let eigs = eig_small(&gram)?;
    let mut svs: Vec<f64> = eigs.iter().map(|e| e.re.max(0.0).sqrt()).collect();
    svs.sort_by(|a, b| b.partial_cmp(a).unwrap());
    Ok(svs)
}

/// Largest singular value, by power iteration on the Gram matrix.
/// The Rayleigh quotient stays accurate even when the top singular
/// values cluster, which the char-poly route does not guarantee.
pub fn op_norm(m: &ComplexMatrix) -> f64 {
    power_iteration(m)
}

fn power_iteration(m: &ComplexMatrix) -> f64 {
    let gram = m.adjoint().matmul(m);
    let n = gram.rows();
    // fixed pseudo-random start to avoid an unlucky orthogonal seed
    let mut v = ComplexMatrix::from_fn(n, 1, |i, _| {
        Complex64::new(1.0 + 0.3 * (i as f64 + 1.0).sin(), 0.2 * (i as f64 + 1.0).cos())
    });
    let mut lambda = 0.0_f64;
    for _ in 0..100_000 {
        let w = gram.matmul(&v);
        let norm = w.frobenius_norm();
        if norm == 0.0 {
            return 0.0;
        }
        let next = w.scale(Complex64::new(1.0 / norm, 0.0));
        let rayleigh = next
            .adjoint()
            .matmul(&gram.matmul(&next))[(0, 0)]
            .re;
        let done = (rayleigh - lambda).abs() <= 1e-10 * rayleigh.abs().max(1e-300);
        lambda = rayleigh;
        v = next;
        if done {
            break;
        }
    }
    lambda.max(0.0).sqrt()
}
