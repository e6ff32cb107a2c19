//! Dense complex matrices sized for the small colligation blocks
//! that appear in this crate: everything is at most 8-by-8, and the
//! determinant/eigenvalue paths are capped well below general-purpose
//! library territory.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

const MAX_DET_DIM: usize = 16;

/// Dense row-major complex matrix.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Complex64>,
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                let e = self[(i, j)];
                write!(f, "{:+.4}{:+.4}i  ", e.re, e.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl ComplexMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Complex64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Dimension(format!(
                "matrix dimensions must be at least 1x1, got {rows}x{cols}"
            )));
        }
        if entries.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "expected {} entries for a {rows}x{cols} matrix, got {}",
                rows * cols,
                entries.len()
            )));
        }
        if entries.iter().any(|e| !e.re.is_finite() || !e.im.is_finite()) {
            return Err(Error::NonFinite("matrix entry is NaN or infinite".into()));
        }
        Ok(Self { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim, dim);
        for i in 0..dim {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> Complex64) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Self { rows, cols, entries }
    }

    /// Square matrix with `diag` on the diagonal.
    pub fn diagonal(diag: &[Complex64]) -> Self {
        let n = diag.len();
        Self::from_fn(n, n, |i, j| {
            if i == j {
                diag[i]
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
    }

    /// Real-valued convenience constructor, mostly for tests and fixtures.
    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map(|row| row.len()).unwrap_or(0);
        let mut entries = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::Dimension("ragged row lengths".into()));
            }
            entries.extend(row.iter().map(|&x| Complex64::new(x, 0.0)));
        }
        Self::new(r, c, entries)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e * s).collect(),
        }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn trace(&self) -> Complex64 {
        debug_assert!(self.is_square());
        (0..self.rows).map(|i| self[(i, i)]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries.iter().map(|e| e.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|e| e.norm()).fold(0.0, f64::max)
    }

    /// Extracts the block with top-left corner (r0, c0).
    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        debug_assert!(r0 + rows <= self.rows && c0 + cols <= self.cols);
        Self::from_fn(rows, cols, |i, j| self[(r0 + i, c0 + j)])
    }

    /// Assembles [[a, b], [c, d]]; dimensions must be conformal.
    pub fn from_blocks(a: &Self, b: &Self, c: &Self, d: &Self) -> Result<Self> {
        if a.rows != b.rows || c.rows != d.rows || a.cols != c.cols || b.cols != d.cols {
            return Err(Error::Dimension("block dimensions are not conformal".into()));
        }
        let rows = a.rows + c.rows;
        let cols = a.cols + b.cols;
        Ok(Self::from_fn(rows, cols, |i, j| match (i < a.rows, j < a.cols) {
            (true, true) => a[(i, j)],
            (true, false) => b[(i, j - a.cols)],
            (false, true) => c[(i - a.rows, j)],
            (false, false) => d[(i - a.rows, j - a.cols)],
        }))
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(
            self.cols, other.rows,
            "matmul dimension mismatch: {}x{} * {}x{}",
            self.rows, self.cols, other.rows, other.cols
        );
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let aik = self[(i, k)];
                if aik == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += aik * other[(k, j)];
                }
            }
        }
        out
    }

    /// Kronecker product, used to vectorize the gauge-recovery equations.
    pub fn kron(&self, other: &Self) -> Self {
        Self::from_fn(
            self.rows * other.rows,
            self.cols * other.cols,
            |i, j| self[(i / other.rows, j / other.cols)] * other[(i % other.rows, j % other.cols)],
        )
    }

    /// Determinant by LU with partial pivoting. Exact zero is returned
    /// (not an error) when a pivot column is entirely zero.
    pub fn det(&self) -> Result<Complex64> {
        if !self.is_square() {
            return Err(Error::Dimension(format!(
                "determinant of non-square {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        if n > MAX_DET_DIM {
            return Err(Error::Dimension(format!(
                "determinant capped at {MAX_DET_DIM}x{MAX_DET_DIM}, got {n}x{n}"
            )));
        }
        let mut lu = self.clone();
        let mut det = Complex64::new(1.0, 0.0);
        for k in 0..n {
            let mut piv = k;
            let mut piv_mag = lu[(k, k)].norm();
            for i in (k + 1)..n {
                let mag = lu[(i, k)].norm();
                if mag > piv_mag {
                    piv = i;
                    piv_mag = mag;
                }
            }
            if piv_mag == 0.0 {
                return Ok(Complex64::new(0.0, 0.0));
            }
            if piv != k {
                lu.swap_rows(piv, k);
                det = -det;
            }
            det *= lu[(k, k)];
            for i in (k + 1)..n {
                let factor = lu[(i, k)] / lu[(k, k)];
                for j in (k + 1)..n {
                    let sub = factor * lu[(k, j)];
                    lu[(i, j)] -= sub;
                }
            }
        }
        Ok(det)
    }

    /// Solves `self * X = rhs` by Gaussian elimination with partial
    /// pivoting. Pivots below `dim * eps * max|entry|` raise
    /// [`Error::Singular`] with the offending pivot magnitude.
    pub fn solve(&self, rhs: &Self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::Dimension(format!(
                "solve with non-square {}x{} matrix",
                self.rows, self.cols
            )));
        }
        if rhs.rows != self.rows {
            return Err(Error::Dimension(format!(
                "solve: rhs has {} rows, expected {}",
                rhs.rows, self.rows
            )));
        }
        let n = self.rows;
        let pivot_floor = (n as f64) * f64::EPSILON * self.max_abs().max(f64::MIN_POSITIVE);
        let mut a = self.clone();
        let mut x = rhs.clone();
        for k in 0..n {
            let mut piv = k;
            let mut piv_mag = a[(k, k)].norm();
            for i in (k + 1)..n {
                let mag = a[(i, k)].norm();
                if mag > piv_mag {
                    piv = i;
                    piv_mag = mag;
                }
            }
            if piv_mag <= pivot_floor {
                return Err(Error::Singular { pivot: piv_mag });
            }
            if piv != k {
                a.swap_rows(piv, k);
                x.swap_rows(piv, k);
            }
            for i in (k + 1)..n {
                let factor = a[(i, k)] / a[(k, k)];
                if factor == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in (k + 1)..n {
                    let sub = factor * a[(k, j)];
                    a[(i, j)] -= sub;
                }
                for j in 0..x.cols {
                    let sub = factor * x[(k, j)];
                    x[(i, j)] -= sub;
                }
            }
        }
        // back substitution
        for k in (0..n).rev() {
            for j in 0..x.cols {
                let mut acc = x[(k, j)];
                for l in (k + 1)..n {
                    acc -= a[(k, l)] * x[(l, j)];
                }
                x[(k, j)] = acc / a[(k, k)];
            }
        }
        Ok(x)
    }

    /// Householder QR; returns (Q, R) with Q unitary and R upper triangular.
    pub fn qr(&self) -> (Self, Self) {
        assert!(self.is_square(), "qr is only used on square matrices here");
        let n = self.rows;
        let mut r = self.clone();
        let mut q = Self::identity(n);
        for k in 0..n.saturating_sub(1) {
            // reflector for column k below the diagonal
            let mut norm_sq = 0.0;
            for i in k..n {
                norm_sq += r[(i, k)].norm_sqr();
            }
            let norm = norm_sq.sqrt();
            if norm == 0.0 {
                continue;
            }
            let x0 = r[(k, k)];
            let phase = if x0.norm() == 0.0 {
                Complex64::new(1.0, 0.0)
            } else {
                x0 / x0.norm()
            };
            let alpha = -phase * norm;
            let mut v: Vec<Complex64> = (k..n).map(|i| r[(i, k)]).collect();
            v[0] -= alpha;
            let v_norm_sq: f64 = v.iter().map(|e| e.norm_sqr()).sum();
            if v_norm_sq == 0.0 {
                continue;
            }
            // r <- H r, with H = I - 2 v v* / (v* v) acting on rows k..n
            for j in 0..n {
                let mut dot = Complex64::new(0.0, 0.0);
                for (idx, vi) in v.iter().enumerate() {
                    dot += vi.conj() * r[(k + idx, j)];
                }
                let coeff = dot * (2.0 / v_norm_sq);
                for (idx, vi) in v.iter().enumerate() {
                    let sub = coeff * vi;
                    r[(k + idx, j)] -= sub;
                }
            }
            // q <- q H (H is Hermitian), acting on columns k..n
            for i in 0..n {
                let mut dot = Complex64::new(0.0, 0.0);
                for (idx, vi) in v.iter().enumerate() {
                    dot += q[(i, k + idx)] * vi;
                }
                let coeff = dot * (2.0 / v_norm_sq);
                for (idx, vi) in v.iter().enumerate() {
                    let sub = coeff * vi.conj();
                    q[(i, k + idx)] -= sub;
                }
            }
        }
        (q, r)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        debug_assert!(i < self.rows && j < self.cols);
        &self.entries[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.entries[i * self.cols + j]
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, other: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, other: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, other: &ComplexMatrix) -> ComplexMatrix {
        self.matmul(other)
    }
}

/// Frobenius distance from `m* m` to the identity.
pub fn unitarity_residual(m: &ComplexMatrix) -> f64 {
    let gram = m.adjoint().matmul(m);
    (&gram - &ComplexMatrix::identity(m.cols())).frobenius_norm()
}
