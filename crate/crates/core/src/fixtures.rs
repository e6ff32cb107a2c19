//! Closed-form reference colligations with hand-checkable transfer
//! functions and variety polynomials. Used throughout the test suites
//! and handy as CLI input material.

use num_complex::Complex64;

use crate::numerics::ComplexMatrix;
use crate::transfer::BlockUnitary;

/// A = 0, B = C = I, D = 0. Transfer function psi(z) = z I;
/// variety polynomial (w - z)^2; invariants ({0,0}, {0,0}, 2).
pub fn swap_unitary() -> BlockUnitary {
    BlockUnitary::from_blocks(
        ComplexMatrix::zeros(2, 2),
        ComplexMatrix::identity(2),
        ComplexMatrix::identity(2),
        ComplexMatrix::zeros(2, 2),
        1e-12,
    )
    .expect("swap colligation is unitary")
}

/// A = 0, B = I, C = [[0,1],[1,0]], D = 0. Variety polynomial
/// w^2 - z^2; invariants ({0,0}, {0,0}, 0).
pub fn flip_unitary() -> BlockUnitary {
    BlockUnitary::from_blocks(
        ComplexMatrix::zeros(2, 2),
        ComplexMatrix::identity(2),
        ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]).unwrap(),
        ComplexMatrix::zeros(2, 2),
        1e-12,
    )
    .expect("flip colligation is unitary")
}

/// The scalar Blaschke factor b(z) = (0.6 - z)/(1 - 0.6 z) doubled up:
/// A = 0.6 I, B = 0.8 I, C = -0.8 I, D = 0.6 I. Variety polynomial
/// ((0.6 z - 1) w + (0.6 - z))^2; invariants ({0.6, 0.6}, {0.6, 0.6}, -1.28).
pub fn blaschke_unitary() -> BlockUnitary {
    let i2 = ComplexMatrix::identity(2);
    let s = |x: f64| Complex64::new(x, 0.0);
    BlockUnitary::from_blocks(
        i2.scale(s(0.6)),
        i2.scale(s(0.8)),
        i2.scale(s(-0.8)),
        i2.scale(s(0.6)),
        1e-12,
    )
    .expect("blaschke colligation is unitary")
}
