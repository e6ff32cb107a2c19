//! Python bindings: thin wrappers over the core types plus the
//! module-level operations. Complex values cross the boundary as
//! Python `complex`; reports and file formats as JSON strings.

use num_complex::Complex64;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use distvar::io::{BivariatePolyJson, BlockUnitaryJson, InvariantsJson, LOAD_UNITARITY_TOL};
use distvar::moduli;
use distvar::numerics::ComplexMatrix;
use distvar::transfer;
use distvar::variety;
use distvar::verify::{verify as run_verify, VerifyTolerances};

fn err(e: distvar::error::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn json_err(e: serde_json::Error) -> PyErr {
    PyValueError::new_err(format!("invalid JSON: {e}"))
}

fn matrix_rows(m: &ComplexMatrix) -> Vec<Vec<Complex64>> {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m[(i, j)]).collect())
        .collect()
}

#[pyclass(name = "BlockUnitary", frozen)]
struct PyBlockUnitary {
    inner: transfer::BlockUnitary,
}

#[pymethods]
impl PyBlockUnitary {
    /// Seeded Haar-random colligation with block sizes (m, n).
    #[staticmethod]
    #[pyo3(signature = (m, n, seed=0))]
    fn haar(m: usize, n: usize, seed: u64) -> PyResult<Self> {
        if m == 0 || n == 0 {
            return Err(PyValueError::new_err("block sizes m, n must be at least 1"));
        }
        Ok(Self {
            inner: transfer::BlockUnitary::haar(m, n, seed),
        })
    }

    #[staticmethod]
    #[pyo3(signature = (text, tol=LOAD_UNITARITY_TOL))]
    fn from_json(text: &str, tol: f64) -> PyResult<Self> {
        let parsed: BlockUnitaryJson = serde_json::from_str(text).map_err(json_err)?;
        Ok(Self {
            inner: parsed.into_unitary(tol).map_err(err)?,
        })
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string_pretty(&BlockUnitaryJson::from_unitary(&self.inner))
            .map_err(|e| PyValueError::new_err(e.to_string()))
    }

    #[getter]
    fn m(&self) -> usize {
        self.inner.m()
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    /// Full (m+n)x(m+n) matrix as nested lists of complex.
    fn matrix(&self) -> Vec<Vec<Complex64>> {
        matrix_rows(&self.inner.assemble())
    }

    fn unitarity_residual(&self) -> f64 {
        self.inner.unitarity_residual()
    }

    /// Transfer function value at z inside the disk.
    fn psi(&self, z: Complex64) -> PyResult<Vec<Vec<Complex64>>> {
        Ok(matrix_rows(&self.inner.psi(z).map_err(err)?))
    }

    fn defect_residual(&self, z: Complex64) -> PyResult<f64> {
        self.inner.defect_residual(z).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!("BlockUnitary(m={}, n={})", self.inner.m(), self.inner.n())
    }
}

#[pyclass(name = "BivariatePoly", frozen)]
struct PyBivariatePoly {
    inner: variety::BivariatePoly,
}

#[pymethods]
impl PyBivariatePoly {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let parsed: BivariatePolyJson = serde_json::from_str(text).map_err(json_err)?;
        Ok(Self {
            inner: parsed.into_poly().map_err(err)?,
        })
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string_pretty(&BivariatePolyJson::from_poly(&self.inner))
            .map_err(|e| PyValueError::new_err(e.to_string()))
    }

    #[getter]
    fn deg_z(&self) -> usize {
        self.inner.deg_z()
    }

    #[getter]
    fn deg_w(&self) -> usize {
        self.inner.deg_w()
    }

    /// Coefficient table with coeffs()[i][j] multiplying z^i w^j.
    fn coeffs(&self) -> Vec<Vec<Complex64>> {
        self.inner.coeffs().to_vec()
    }

    fn eval(&self, z: Complex64, w: Complex64) -> Complex64 {
        self.inner.eval(z, w)
    }

    fn relative_distance(&self, other: &Self) -> f64 {
        self.inner.relative_distance(&other.inner)
    }

    fn __repr__(&self) -> String {
        format!(
            "BivariatePoly(deg_z={}, deg_w={})",
            self.inner.deg_z(),
            self.inner.deg_w()
        )
    }
}

#[pyclass(name = "Invariants", frozen)]
struct PyInvariants {
    inner: moduli::Invariants,
}

#[pymethods]
impl PyInvariants {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let parsed: InvariantsJson = serde_json::from_str(text).map_err(json_err)?;
        Ok(Self {
            inner: parsed.into_invariants().map_err(err)?,
        })
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string_pretty(&InvariantsJson::from_invariants(&self.inner))
            .map_err(|e| PyValueError::new_err(e.to_string()))
    }

    #[getter]
    fn eig_a(&self) -> [Complex64; 2] {
        *self.inner.eig_a()
    }

    #[getter]
    fn eig_d(&self) -> [Complex64; 2] {
        *self.inner.eig_d()
    }

    #[getter]
    fn tr_bc(&self) -> Complex64 {
        self.inner.tr_bc()
    }

    fn __repr__(&self) -> String {
        format!(
            "Invariants(eig_a={:?}, eig_d={:?}, tr_bc={})",
            self.inner.eig_a(),
            self.inner.eig_d(),
            self.inner.tr_bc()
        )
    }
}

/// Variety polynomial of a colligation.
#[pyfunction]
fn variety_poly(u: &PyBlockUnitary) -> PyResult<PyBivariatePoly> {
    Ok(PyBivariatePoly {
        inner: variety::variety_poly(&u.inner).map_err(err)?,
    })
}

/// Invariant triple (eig A, eig D, tr BC) of a rank-(2, 2) colligation.
#[pyfunction]
fn invariants(u: &PyBlockUnitary) -> PyResult<PyInvariants> {
    Ok(PyInvariants {
        inner: moduli::invariants(&u.inner).map_err(err)?,
    })
}

/// Whether two colligations cut out the same variety.
#[pyfunction]
#[pyo3(signature = (a, b, tol=moduli::SAME_VARIETY_TOL))]
fn same_variety(a: &PyBlockUnitary, b: &PyBlockUnitary, tol: f64) -> PyResult<bool> {
    moduli::same_variety(&a.inner, &b.inner, tol).map_err(err)
}

/// Rebuild the variety polynomial from the invariant triple.
#[pyfunction]
fn reconstruct_q(inv: &PyInvariants) -> PyResult<PyBivariatePoly> {
    Ok(PyBivariatePoly {
        inner: moduli::reconstruct_q(&inv.inner).map_err(err)?,
    })
}

/// Random representative of the same gauge orbit.
#[pyfunction]
fn gauge_orbit_sample(u: &PyBlockUnitary, seed: u64) -> PyResult<PyBlockUnitary> {
    Ok(PyBlockUnitary {
        inner: moduli::gauge_orbit_sample(&u.inner, seed).map_err(err)?,
    })
}

/// w-values on the variety above a fixed z.
#[pyfunction]
fn sheets_w(q: &PyBivariatePoly, z: Complex64) -> PyResult<Vec<Complex64>> {
    variety::sheets_w(&q.inner, z).map_err(err)
}

/// z-values on the variety above a fixed w.
#[pyfunction]
fn sheets_z(q: &PyBivariatePoly, w: Complex64) -> PyResult<Vec<Complex64>> {
    variety::sheets_z(&q.inner, w).map_err(err)
}

/// Residual of the determinant/trace functional equation at z.
#[pyfunction]
fn lemma_residual(u: &PyBlockUnitary, z: Complex64) -> PyResult<f64> {
    variety::lemma_residual(&u.inner, z).map_err(err)
}

/// Whether every boundary sheet has modulus >= 1 - tol.
#[pyfunction]
#[pyo3(signature = (u, samples=64, tol=1e-4))]
fn is_distinguished(u: &PyBlockUnitary, samples: usize, tol: f64) -> PyResult<bool> {
    Ok(variety::is_distinguished(&u.inner, samples, tol)
        .map_err(err)?
        .all_passed())
}

/// Full verification suite. Returns (report_json, notices, passed).
#[pyfunction]
#[pyo3(signature = (u, samples=64, strict=false))]
fn verify(u: &PyBlockUnitary, samples: usize, strict: bool) -> PyResult<(String, Vec<String>, bool)> {
    let tols = if strict {
        VerifyTolerances::default().strict()
    } else {
        VerifyTolerances::default()
    };
    let (report, notices) = run_verify(&u.inner, samples, &tols).map_err(err)?;
    let text = serde_json::to_string_pretty(&report)
        .map_err(|e| PyValueError::new_err(e.to_string()))?;
    Ok((text, notices, report.all_passed()))
}

#[pymodule]
fn distvar_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyBlockUnitary>()?;
    m.add_class::<PyBivariatePoly>()?;
    m.add_class::<PyInvariants>()?;
    m.add_function(wrap_pyfunction!(variety_poly, m)?)?;
    m.add_function(wrap_pyfunction!(invariants, m)?)?;
    m.add_function(wrap_pyfunction!(same_variety, m)?)?;
    m.add_function(wrap_pyfunction!(reconstruct_q, m)?)?;
    m.add_function(wrap_pyfunction!(gauge_orbit_sample, m)?)?;
    m.add_function(wrap_pyfunction!(sheets_w, m)?)?;
    m.add_function(wrap_pyfunction!(sheets_z, m)?)?;
    m.add_function(wrap_pyfunction!(lemma_residual, m)?)?;
    m.add_function(wrap_pyfunction!(is_distinguished, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
