//! Minimal dense complex linear-algebra kernel for the small blocks
//! this crate works with.

pub mod eig;
pub mod haar;
pub mod matrix;
pub mod roots;

pub use eig::{char_poly, eig_small, multiset_match, multiset_max_distance, op_norm, singular_values};
pub use haar::{haar_unitary, haar_unitary_from_rng};
pub use matrix::{unitarity_residual, ComplexMatrix};
pub use roots::{expand_from_roots, poly_roots};

/// Tolerance knobs shared across the crate, overridable by callers.
#[derive(Debug, Clone, Copy)]
pub struct Tolerances {
    /// Frobenius distance from U*U to the identity.
    pub unitarity: f64,
    /// |p(root)| relative to max|coeff|.
    pub root_residual: f64,
    /// Generic value comparisons (multiset matching, coefficient equality).
    pub comparison: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            unitarity: 1e-10,
            root_residual: 1e-9,
            comparison: 1e-8,
        }
    }
}
