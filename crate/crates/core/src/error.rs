use num_complex::Complex64;
use thiserror::Error;

/// Errors surfaced by the linear-algebra kernel and the variety layers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("matrix is singular to working tolerance (pivot magnitude {pivot:.3e})")]
    Singular { pivot: f64 },

    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    #[error("root iteration did not converge (worst residual {residual:.3e})")]
    NonConvergence { residual: f64 },

    #[error("matrix is not unitary: residual {residual:.3e} exceeds tolerance {tol:.3e}")]
    NotUnitary { residual: f64, tol: f64 },

    #[error("degenerate fiber: leading coefficient slice vanishes at {at}")]
    DegenerateFiber { at: Complex64 },

    #[error("pole of coefficient function at {at}")]
    Pole { at: Complex64 },

    #[error("degenerate determinant: |det A| = {det_a:.3e} is below {limit:.1e}")]
    DegenerateDeterminant { det_a: f64, limit: f64 },

    #[error("infeasible invariants: {0}")]
    Infeasible(String),

    #[error("internal consistency check failed: {0}")]
    InternalConsistency(String),

    #[error("non-finite value: {0}")]
    NonFinite(String),
}

pub type Result<T> = std::result::Result<T, Error>;
