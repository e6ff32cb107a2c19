//! The determinantal variety polynomial
//! `Q(z, w) = det [[A - wI, zB], [C, zD - I]]`,
//! its fiber (sheet) solvers, the distinguished-boundary verifier, and
//! the trace/determinant functional equation for 2-sheeted varieties.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numerics::{poly_roots, roots, ComplexMatrix};
use crate::report::{Check, VerificationReport};
use crate::transfer::{BlockUnitary, BOUNDARY_RADIUS};

/// Interpolation residual allowed when recovering Q from determinant samples.
const INTERP_TOL: f64 = 1e-8;
/// Relative threshold below which a fiber's leading coefficient counts as vanished.
const FIBER_LEAD_TOL: f64 = 1e-10;

/// Bivariate polynomial `sum coeff[i][j] z^i w^j`.
#[derive(Debug, Clone, PartialEq)]
pub struct BivariatePoly {
    coeff: Vec<Vec<Complex64>>,
}

impl BivariatePoly {
    /// `coeff[i][j]` multiplies `z^i w^j`; the table must be a
    /// non-empty rectangle.
    pub fn new(coeff: Vec<Vec<Complex64>>) -> Result<Self> {
        if coeff.is_empty() || coeff[0].is_empty() {
            return Err(Error::Dimension("empty coefficient table".into()));
        }
        let width = coeff[0].len();
        if coeff.iter().any(|row| row.len() != width) {
            return Err(Error::Dimension("ragged coefficient table".into()));
        }
        for row in &coeff {
            for c in row {
                if !c.re.is_finite() || !c.im.is_finite() {
                    return Err(Error::NonFinite("polynomial coefficient".into()));
                }
            }
        }
        Ok(Self { coeff })
    }

    pub fn deg_z(&self) -> usize {
        self.coeff.len() - 1
    }

    pub fn deg_w(&self) -> usize {
        self.coeff[0].len() - 1
    }

    pub fn coeff(&self, i: usize, j: usize) -> Complex64 {
        self.coeff[i][j]
    }

    pub fn coeffs(&self) -> &[Vec<Complex64>] {
        &self.coeff
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.coeff
            .iter()
            .flatten()
            .map(|c| c.norm())
            .fold(0.0, f64::max)
    }

    /// Horner evaluation in w of Horner-in-z coefficient slices.
    pub fn eval(&self, z: Complex64, w: Complex64) -> Complex64 {
        self.w_coeffs_at(z)
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * w + c)
    }

    /// Coefficients of `Q(z, .)` as a polynomial in w (ascending).
    pub fn w_coeffs_at(&self, z: Complex64) -> Vec<Complex64> {
        (0..=self.deg_w())
            .map(|j| roots::eval(&self.w_slice(j), z))
            .collect()
    }

    /// Coefficients of `Q(., w)` as a polynomial in z (ascending).
    pub fn z_coeffs_at(&self, w: Complex64) -> Vec<Complex64> {
        (0..=self.deg_z())
            .map(|i| roots::eval(&self.coeff[i], w))
            .collect()
    }

    /// The z-polynomial slice multiplying `w^j` (ascending in z).
    pub fn w_slice(&self, j: usize) -> Vec<Complex64> {
        self.coeff.iter().map(|row| row[j]).collect()
    }

    /// The w-polynomial slice multiplying `z^i` (ascending in w).
    pub fn z_slice(&self, i: usize) -> Vec<Complex64> {
        self.coeff[i].clone()
    }

    /// Max coefficient deviation relative to this polynomial's scale.
    pub fn relative_distance(&self, other: &Self) -> f64 {
        let scale = self.max_abs_coeff().max(1e-300);
        let rows = self.coeff.len().max(other.coeff.len());
        let cols = self.coeff[0].len().max(other.coeff[0].len());
        let get = |p: &Self, i: usize, j: usize| {
            p.coeff
                .get(i)
                .and_then(|row| row.get(j))
                .copied()
                .unwrap_or(Complex64::new(0.0, 0.0))
        };
        let mut worst = 0.0_f64;
        for i in 0..rows {
            for j in 0..cols {
                worst = worst.max((get(self, i, j) - get(other, i, j)).norm());
            }
        }
        worst / scale
    }
}

/// The variety polynomial of a colligation, normalized exactly as the
/// raw determinant `det [[A - wI, zB], [C, zD - I]]` (no rescaling).
///
/// Recovered by sampling the determinant on two concentric scaled
/// root-of-unity rings per variable and solving the tensor Vandermonde
/// system in the least-squares sense, then re-checked at fresh points.
/// For genuinely unitary input with `|det A| > 1e-10` the adjoint-side
/// determinant form is cross-checked coefficientwise.
pub fn variety_poly(u: &BlockUnitary) -> Result<BivariatePoly> {
    let m = u.m();
    let n = u.n();
    let direct = |z: Complex64, w: Complex64| -> Result<Complex64> {
        block_determinant(u, z, w)
    };
    let q = interpolate_bivariate(n, m, &direct)?;

    // the adjoint determinant description must agree for unitary input
    if u.unitarity_residual() <= 1e-6 {
        let det_a = u.a().det()?;
        if det_a.norm() > 1e-10 {
            // block-row/column swaps in the reflection argument leave a
            // parity sign when m + n is odd
            let sign = if (m + n) % 2 == 0 { 1.0 } else { -1.0 };
            let factor = u.d().det()? / det_a.conj() * sign;
            let adjoint_form = |z: Complex64, w: Complex64| -> Result<Complex64> {
                Ok(adjoint_block_determinant(u, z, w)? * factor)
            };
            let q2 = interpolate_bivariate(n, m, &adjoint_form)?;
            let dist = q.relative_distance(&q2);
            if dist > 1e-8 {
                return Err(Error::InternalConsistency(format!(
                    "adjoint determinant form deviates by {dist:.3e} (relative)"
                )));
            }
        }
    }
    Ok(q)
}

fn block_determinant(u: &BlockUnitary, z: Complex64, w: Complex64) -> Result<Complex64> {
    let m = u.m();
    let n = u.n();
    let top_left = &u.a().clone() - &ComplexMatrix::identity(m).scale(w);
    let top_right = u.b().scale(z);
    let bottom_right = &u.d().scale(z) - &ComplexMatrix::identity(n);
    ComplexMatrix::from_blocks(&top_left, &top_right, u.c(), &bottom_right)?.det()
}

fn adjoint_block_determinant(u: &BlockUnitary, z: Complex64, w: Complex64) -> Result<Complex64> {
    let m = u.m();
    let n = u.n();
    let top_left = &u.d().adjoint() - &ComplexMatrix::identity(n).scale(z);
    let top_right = u.b().adjoint().scale(w);
    let c_star = u.c().adjoint();
    let bottom_right = &u.a().adjoint().scale(w) - &ComplexMatrix::identity(m);
    ComplexMatrix::from_blocks(&top_left, &top_right, &c_star, &bottom_right)?.det()
}

/// Two scaled root-of-unity rings per variable keep the Vandermonde
/// well conditioned; the second ring is angularly offset from the first.
fn ring_nodes(degree: usize) -> Vec<Complex64> {
    let k = degree + 1;
    let mut nodes = Vec::with_capacity(2 * k);
    for i in 0..k {
        let theta = 2.0 * std::f64::consts::PI * (i as f64) / (k as f64);
        nodes.push(Complex64::from_polar(1.0, theta));
    }
    for i in 0..k {
        let theta = 2.0 * std::f64::consts::PI * (i as f64 + 0.5) / (k as f64);
        nodes.push(Complex64::from_polar(0.5, theta));
    }
    nodes
}

fn interpolate_bivariate(
    deg_z: usize,
    deg_w: usize,
    f: &dyn Fn(Complex64, Complex64) -> Result<Complex64>,
) -> Result<BivariatePoly> {
    let z_nodes = ring_nodes(deg_z);
    let w_nodes = ring_nodes(deg_w);
    let unknowns = (deg_z + 1) * (deg_w + 1);
    let samples = z_nodes.len() * w_nodes.len();

    let mut design = ComplexMatrix::zeros(samples, unknowns);
    let mut rhs = ComplexMatrix::zeros(samples, 1);
    let mut row = 0;
    for &z in &z_nodes {
        for &w in &w_nodes {
            let mut zi = Complex64::new(1.0, 0.0);
            for i in 0..=deg_z {
                let mut wj = Complex64::new(1.0, 0.0);
                for j in 0..=deg_w {
                    design[(row, i * (deg_w + 1) + j)] = zi * wj;
                    wj *= w;
                }
                zi *= z;
            }
            rhs[(row, 0)] = f(z, w)?;
            row += 1;
        }
    }
    let normal = design.adjoint().matmul(&design);
    let x = normal.solve(&design.adjoint().matmul(&rhs))?;

    let coeff: Vec<Vec<Complex64>> = (0..=deg_z)
        .map(|i| (0..=deg_w).map(|j| x[(i * (deg_w + 1) + j, 0)]).collect())
        .collect();
    let q = BivariatePoly::new(coeff)?;

    // fresh-point residual check, deterministic sample locations
    let scale = rhs.max_abs().max(1.0);
    for k in 0..5 {
        let t = k as f64;
        let z = Complex64::from_polar(0.3 + 0.12 * t, 1.7 * t + 0.31);
        let w = Complex64::from_polar(0.8 - 0.1 * t, 0.9 * t + 2.11);
        let residual = (q.eval(z, w) - f(z, w)?).norm();
        if residual > INTERP_TOL * scale {
            return Err(Error::InternalConsistency(format!(
                "interpolation residual {residual:.3e} at fresh point ({z}, {w})"
            )));
        }
    }
    Ok(q)
}

/// All w-sheets above `z`, with multiplicity. Fails with a
/// degenerate-fiber error when the leading slice vanishes at `z`.
pub fn sheets_w(q: &BivariatePoly, z: Complex64) -> Result<Vec<Complex64>> {
    let coeffs = q.w_coeffs_at(z);
    fiber_roots(coeffs, q.max_abs_coeff(), z, q.deg_z(), q.deg_w())
}

/// All z-sheets above `w`, with multiplicity.
pub fn sheets_z(q: &BivariatePoly, w: Complex64) -> Result<Vec<Complex64>> {
    let coeffs = q.z_coeffs_at(w);
    fiber_roots(coeffs, q.max_abs_coeff(), w, q.deg_w(), q.deg_z())
}

fn fiber_roots(
    coeffs: Vec<Complex64>,
    poly_scale: f64,
    at: Complex64,
    other_degree: usize,
    expected: usize,
) -> Result<Vec<Complex64>> {
    let lead_scale = poly_scale * at.norm().max(1.0).powi(other_degree as i32);
    if coeffs[expected].norm() <= FIBER_LEAD_TOL * lead_scale.max(1e-300) {
        return Err(Error::DegenerateFiber { at });
    }
    let roots = poly_roots(&coeffs)?;
    if roots.len() != expected {
        return Err(Error::DegenerateFiber { at });
    }
    Ok(roots)
}

/// Checks that the variety exits the bidisk through the torus: at
/// `samples` points on the circle of radius `1 - 1e-6`, every sheet in
/// the other variable must have modulus at least `1 - tol`. A vanished
/// fiber at the boundary is recorded as an (infinite-residual) failure.
pub fn is_distinguished(u: &BlockUnitary, samples: usize, tol: f64) -> Result<VerificationReport> {
    let q = variety_poly(u)?;
    let mut report = VerificationReport::default();

    let sweep = |solver: &dyn Fn(Complex64) -> Result<Vec<Complex64>>| {
        let mut worst = 0.0_f64;
        let mut witness = None;
        for k in 0..samples {
            let theta = 2.0 * std::f64::consts::PI * (k as f64) / (samples.max(1) as f64);
            let point = Complex64::from_polar(BOUNDARY_RADIUS, theta);
            match solver(point) {
                Ok(sheets) => {
                    for s in sheets {
                        let deviation = (1.0 - s.norm()).max(0.0);
                        if deviation > worst {
                            worst = deviation;
                            witness = Some(point);
                        }
                    }
                }
                Err(_) => {
                    worst = f64::INFINITY;
                    witness = Some(point);
                }
            }
        }
        (worst, witness)
    };

    let (worst_w, witness_w) = sweep(&|z| sheets_w(&q, z));
    report.push(Check::new("boundary_w_sheets", worst_w, tol, witness_w));
    let (worst_z, witness_z) = sweep(&|w| sheets_z(&q, w));
    report.push(Check::new("boundary_z_sheets", worst_z, tol, witness_z));
    Ok(report)
}

/// Residual of the functional equation `a1(z) = a0(z) conj(a1(1/zbar))`
/// for two-sheeted varieties, where `a1 = tr psi` and `a0 = det psi`.
/// The reflected value is evaluated from the rational coefficient
/// slices `-p1/p2`, never from the realization outside the disk.
pub fn lemma_residual(u: &BlockUnitary, z: Complex64) -> Result<f64> {
    if u.m() != 2 {
        return Err(Error::Dimension(format!(
            "functional equation requires m = 2, got m = {}",
            u.m()
        )));
    }
    let r = z.norm();
    if r == 0.0 || r >= 1.0 {
        return Err(Error::DegenerateInput(format!(
            "need 0 < |z| < 1, got |z| = {r}"
        )));
    }
    let q = variety_poly(u)?;
    let psi = u.psi(z)?;
    let a1 = psi.trace();
    let a0 = psi.det()?;

    let zeta = z.conj().inv();
    let p2 = q.w_slice(2);
    let p1 = q.w_slice(1);
    let p2_at = roots::eval(&p2, zeta);
    let p2_scale = p2.iter().map(|c| c.norm()).fold(0.0, f64::max)
        * zeta.norm().max(1.0).powi(q.deg_z() as i32);
    if p2_at.norm() <= 1e-10 * p2_scale.max(1e-300) {
        return Err(Error::Pole { at: zeta });
    }
    let a1_reflected = -roots::eval(&p1, zeta) / p2_at;
    Ok((a1 - a0 * a1_reflected.conj()).norm())
}

/// One variety sample: a mesh point z, a sheet w above it, and the
/// sheet's index in the deterministic (lexicographic) ordering.
#[derive(Debug, Clone, Copy)]
pub struct VarietyPoint {
    pub z: Complex64,
    pub w: Complex64,
    pub sheet: usize,
}

/// Samples the variety over a `grid x grid` polar mesh of the disk,
/// emitting every sheet with `|w| < 1`. No continuation across mesh
/// cells is attempted; sheet indices come from a per-point sort.
pub fn sample_variety(u: &BlockUnitary, grid: usize) -> Result<Vec<VarietyPoint>> {
    if grid == 0 {
        return Err(Error::DegenerateInput("grid must be at least 1".into()));
    }
    let q = variety_poly(u)?;
    let mut out = Vec::new();
    for ri in 0..grid {
        let radius = (ri + 1) as f64 / (grid + 1) as f64;
        for ai in 0..grid {
            let theta = 2.0 * std::f64::consts::PI * (ai as f64) / (grid as f64);
            let z = Complex64::from_polar(radius, theta);
            let Ok(mut sheets) = sheets_w(&q, z) else {
                continue; // degenerate fiber: nothing to emit here
            };
            sheets.sort_by(|a, b| {
                a.re.partial_cmp(&b.re)
                    .unwrap()
                    .then(a.im.partial_cmp(&b.im).unwrap())
            });
            for (idx, w) in sheets.into_iter().enumerate() {
                if w.norm() < 1.0 {
                    out.push(VarietyPoint { z, w, sheet: idx });
                }
            }
        }
    }
    Ok(out)
}
