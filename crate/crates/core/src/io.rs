//! File formats shared with the CLI and the Python bindings.
//!
//! * colligation JSON: `{ "m": 2, "n": 2, "U": [[[re, im], ...], ...] }`,
//!   the full (m+n)x(m+n) matrix row by row; blocks are derived on load.
//! * polynomial JSON: `{ "deg_z": i, "deg_w": j, "coeff": [[[re, im], ...]] }`
//!   with `coeff[i][j]` multiplying `z^i w^j`.
//! * invariants JSON: `{ "eigA": [[re,im],[re,im]], "eigD": [...], "trBC": [re,im] }`.
//! * variety samples CSV with header `re_z,im_z,re_w,im_w,sheet`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::moduli::Invariants;
use crate::numerics::ComplexMatrix;
use crate::transfer::BlockUnitary;
use crate::variety::{BivariatePoly, VarietyPoint};

/// Default unitarity tolerance applied when loading colligation JSON.
pub const LOAD_UNITARITY_TOL: f64 = 1e-8;

#[derive(Debug, Serialize, Deserialize)]
pub struct BlockUnitaryJson {
    pub m: usize,
    pub n: usize,
    #[serde(rename = "U")]
    pub u: Vec<Vec<[f64; 2]>>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct BivariatePolyJson {
    pub deg_z: usize,
    pub deg_w: usize,
    pub coeff: Vec<Vec<[f64; 2]>>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct InvariantsJson {
    #[serde(rename = "eigA")]
    pub eig_a: [[f64; 2]; 2],
    #[serde(rename = "eigD")]
    pub eig_d: [[f64; 2]; 2],
    #[serde(rename = "trBC")]
    pub tr_bc: [f64; 2],
}

fn pair(c: Complex64) -> [f64; 2] {
    [c.re, c.im]
}

fn complex(p: [f64; 2]) -> Complex64 {
    Complex64::new(p[0], p[1])
}

impl BlockUnitaryJson {
    pub fn from_unitary(u: &BlockUnitary) -> Self {
        let full = u.assemble();
        let dim = full.rows();
        Self {
            m: u.m(),
            n: u.n(),
            u: (0..dim)
                .map(|i| (0..dim).map(|j| pair(full[(i, j)])).collect())
                .collect(),
        }
    }

    fn matrix(&self) -> Result<ComplexMatrix> {
        let dim = self.m + self.n;
        if self.u.len() != dim || self.u.iter().any(|row| row.len() != dim) {
            return Err(Error::Dimension(format!(
                "matrix must be {dim}x{dim} for m={}, n={}",
                self.m, self.n
            )));
        }
        ComplexMatrix::new(
            dim,
            dim,
            self.u.iter().flatten().map(|&p| complex(p)).collect(),
        )
    }

    /// Validating load: rejects non-unitary matrices within `tol`.
    pub fn into_unitary(&self, tol: f64) -> Result<BlockUnitary> {
        BlockUnitary::from_matrix(&self.matrix()?, self.m, self.n, tol)
    }

    /// Lenient load for diagnostic paths that must report, not reject,
    /// loss of unitarity.
    pub fn into_unitary_unchecked(&self) -> Result<BlockUnitary> {
        BlockUnitary::from_matrix_unchecked(&self.matrix()?, self.m, self.n)
    }
}

impl BivariatePolyJson {
    pub fn from_poly(q: &BivariatePoly) -> Self {
        Self {
            deg_z: q.deg_z(),
            deg_w: q.deg_w(),
            coeff: q
                .coeffs()
                .iter()
                .map(|row| row.iter().map(|&c| pair(c)).collect())
                .collect(),
        }
    }

    pub fn into_poly(&self) -> Result<BivariatePoly> {
        if self.coeff.len() != self.deg_z + 1
            || self.coeff.iter().any(|row| row.len() != self.deg_w + 1)
        {
            return Err(Error::Dimension(
                "coefficient table does not match the declared degrees".into(),
            ));
        }
        BivariatePoly::new(
            self.coeff
                .iter()
                .map(|row| row.iter().map(|&p| complex(p)).collect())
                .collect(),
        )
    }
}

impl InvariantsJson {
    pub fn from_invariants(inv: &Invariants) -> Self {
        Self {
            eig_a: [pair(inv.eig_a()[0]), pair(inv.eig_a()[1])],
            eig_d: [pair(inv.eig_d()[0]), pair(inv.eig_d()[1])],
            tr_bc: pair(inv.tr_bc()),
        }
    }

    pub fn into_invariants(&self) -> Result<Invariants> {
        Invariants::new(
            [complex(self.eig_a[0]), complex(self.eig_a[1])],
            [complex(self.eig_d[0]), complex(self.eig_d[1])],
            complex(self.tr_bc),
        )
    }
}

/// Renders variety samples as CSV with the fixed column header.
pub fn sheets_csv(points: &[VarietyPoint]) -> String {
    let mut out = String::from("re_z,im_z,re_w,im_w,sheet\n");
    for p in points {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            p.z.re, p.z.im, p.w.re, p.w.im, p.sheet
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::blaschke_unitary;
    use crate::moduli;
    use crate::variety;

    #[test]
    fn unitary_json_round_trip() {
        let u = BlockUnitary::haar(2, 2, 3);
        let json = serde_json::to_string(&BlockUnitaryJson::from_unitary(&u)).unwrap();
        let parsed: BlockUnitaryJson = serde_json::from_str(&json).unwrap();
        let u2 = parsed.into_unitary(LOAD_UNITARITY_TOL).unwrap();
        assert!((&u.assemble() - &u2.assemble()).frobenius_norm() < 1e-15);
    }

    #[test]
    fn load_rejects_non_unitary() {
        let u = BlockUnitary::haar(2, 2, 4);
        let mut json = BlockUnitaryJson::from_unitary(&u);
        json.u[0][0][0] += 0.05;
        assert!(matches!(
            json.into_unitary(LOAD_UNITARITY_TOL),
            Err(Error::NotUnitary { .. })
        ));
        assert!(json.into_unitary_unchecked().is_ok());
    }

    #[test]
    fn poly_json_round_trip() {
        let q = variety::variety_poly(&blaschke_unitary()).unwrap();
        let json = serde_json::to_string(&BivariatePolyJson::from_poly(&q)).unwrap();
        let parsed: BivariatePolyJson = serde_json::from_str(&json).unwrap();
        let q2 = parsed.into_poly().unwrap();
        assert!(q.relative_distance(&q2) == 0.0);
    }

    #[test]
    fn invariants_json_round_trip() {
        let inv = moduli::invariants(&blaschke_unitary()).unwrap();
        let json = serde_json::to_string(&InvariantsJson::from_invariants(&inv)).unwrap();
        let parsed: InvariantsJson = serde_json::from_str(&json).unwrap();
        let inv2 = parsed.into_invariants().unwrap();
        assert!((inv.tr_bc() - inv2.tr_bc()).norm() == 0.0);
    }

    #[test]
    fn csv_shape() {
        let pts = variety::sample_variety(&blaschke_unitary(), 2).unwrap();
        let csv = sheets_csv(&pts);
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), "re_z,im_z,re_w,im_w,sheet");
        assert_eq!(lines.count(), pts.len());
    }
}
