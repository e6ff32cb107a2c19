//! Distinguished varieties of the bidisk from block unitary matrices.
//!
//! A 4x4 (more generally (m+n)x(m+n)) unitary partitioned into blocks
//! A, B, C, D determines a rational matrix inner function
//! `psi(z) = A + zB(I - zD)^{-1}C` and with it an algebraic curve
//! `Q(z, w) = det [[A - wI, zB], [C, zD - I]] = 0` that exits the bidisk
//! through the torus. This crate constructs these varieties, verifies
//! their defining analytic identities numerically, and implements the
//! moduli theory of the two-by-two-sheeted case: the triple
//! (eigenvalues of A, eigenvalues of D, tr BC) decides when two
//! unitaries cut out the same variety, and reconstructs the polynomial
//! outright.

pub mod error;
pub mod fixtures;
pub mod io;
pub mod moduli;
pub mod numerics;
pub mod report;
pub mod transfer;
pub mod variety;
pub mod verify;

pub use error::{Error, Result};
pub use moduli::{gauge_orbit_sample, invariants, reconstruct_q, same_variety, Invariants};
pub use numerics::{ComplexMatrix, Tolerances};
pub use report::{Check, VerificationReport};
pub use transfer::{find_gauge_w, transfer_equal, BlockUnitary, GaugeOutcome};
pub use variety::{
    is_distinguished, lemma_residual, sample_variety, sheets_w, sheets_z, variety_poly,
    BivariatePoly, VarietyPoint,
};
