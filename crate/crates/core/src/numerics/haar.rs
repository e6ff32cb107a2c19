//! Seeded Haar-distributed unitaries: complex Gaussian fill, QR, and
//! phase correction of the R diagonal.

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use rand_distr::StandardNormal;

use crate::numerics::matrix::ComplexMatrix;

/// Haar-distributed `dim x dim` unitary, deterministic in `seed`.
pub fn haar_unitary(dim: usize, seed: u64) -> ComplexMatrix {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    haar_unitary_from_rng(dim, &mut rng)
}

/// Haar sample drawing from a caller-owned generator, so several
/// samples can be derived from one seed.
pub fn haar_unitary_from_rng<R: Rng>(dim: usize, rng: &mut R) -> ComplexMatrix {
    assert!(dim >= 1);
    let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
    let entries: Vec<Complex64> = (0..dim * dim)
        .map(|_| {
            Complex64::new(
                rng.sample::<f64, _>(StandardNormal) * inv_sqrt2,
                rng.sample::<f64, _>(StandardNormal) * inv_sqrt2,
            )
        })
        .collect();
    let g = ComplexMatrix::new(dim, dim, entries).expect("gaussian fill is finite");
    let (q, r) = g.qr();
    // rescale columns by the phases of R's diagonal; this is what makes
    // the QR construction Haar rather than merely unitary
    let phases: Vec<Complex64> = (0..dim)
        .map(|i| {
            let d = r[(i, i)];
            if d.norm() == 0.0 {
                Complex64::new(1.0, 0.0)
            } else {
                d / d.norm()
            }
        })
        .collect();
    q.matmul(&ComplexMatrix::diagonal(&phases))
}
