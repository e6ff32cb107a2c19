//! Property tests for the numeric kernel and the analytic invariants
//! of the transfer/variety layers.

use distvar::numerics::{
    eig_small, expand_from_roots, haar_unitary, multiset_max_distance, poly_roots,
    singular_values, unitarity_residual, ComplexMatrix,
};
use distvar::transfer::{transfer_equal, BlockUnitary, BOUNDARY_RADIUS};
use distvar::{variety_poly, GaugeOutcome};
use num_complex::Complex64;
use proptest::prelude::*;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn complex_in(radius: f64) -> impl Strategy<Value = Complex64> {
    (-radius..radius, -radius..radius)
        .prop_map(|(re, im)| c(re, im))
        .prop_filter("inside the disk", move |z| z.norm() < radius)
}

fn small_square(dim: usize) -> impl Strategy<Value = ComplexMatrix> {
    proptest::collection::vec((-1.0..1.0f64, -1.0..1.0f64), dim * dim).prop_map(move |v| {
        ComplexMatrix::new(dim, dim, v.into_iter().map(|(re, im)| c(re, im)).collect()).unwrap()
    })
}

proptest! {
    #[test]
    fn haar_is_unitary_with_unimodular_det(seed in 0u64..10_000, dim in 1usize..6) {
        let u = haar_unitary(dim, seed);
        prop_assert!(unitarity_residual(&u) <= 1e-12);
        prop_assert!((u.det().unwrap().norm() - 1.0).abs() <= 1e-10);
    }

    #[test]
    fn eigenvalues_match_det_and_trace(m in (2usize..5).prop_flat_map(small_square)) {
        let eigs = eig_small(&m).unwrap();
        let det = m.det().unwrap();
        let prod: Complex64 = eigs.iter().product();
        let sum: Complex64 = eigs.iter().sum();
        prop_assert!((prod - det).norm() <= 1e-9 * det.norm().max(1.0));
        prop_assert!((sum - m.trace()).norm() <= 1e-10 * m.trace().norm().max(1.0));
    }

    #[test]
    fn roots_round_trip_coefficients(roots in proptest::collection::vec(complex_in(2.0), 1..5)) {
        let coeffs = expand_from_roots(&roots);
        let found = poly_roots(&coeffs).unwrap();
        let back = expand_from_roots(&found);
        let scale = coeffs.iter().map(|x| x.norm()).fold(0.0, f64::max);
        for (a, b) in coeffs.iter().zip(back.iter()) {
            prop_assert!((a - b).norm() <= 1e-8 * scale);
        }
    }

    #[test]
    fn solve_multiply_back(m in small_square(4), seed in 0u64..1000) {
        let svs = singular_values(&m).unwrap();
        let smin = *svs.last().unwrap();
        prop_assume!(smin > 0.0 && svs[0] / smin <= 1e6);
        let rhs = haar_unitary(4, seed);
        let x = m.solve(&rhs).unwrap();
        let res = (&m.matmul(&x) - &rhs).frobenius_norm();
        prop_assert!(res <= 1e-10 * rhs.frobenius_norm());
    }
}

#[test]
fn gauge_invariance_of_transfer_function() {
    for seed in 0..200u64 {
        let u = BlockUnitary::haar(2, 2, seed);
        let w0 = haar_unitary(2, seed + 100_000);
        let u1 = u.conjugate(&ComplexMatrix::identity(2), &w0).unwrap();
        let mut worst = 0.0_f64;
        for k in 0..20 {
            let z = Complex64::from_polar(0.045 * (k + 1) as f64, 0.7 * k as f64);
            let d = (&u.psi(z).unwrap() - &u1.psi(z).unwrap()).frobenius_norm();
            worst = worst.max(d);
        }
        assert!(worst <= 1e-9, "seed {seed}: deviation {worst:.3e}");
    }
}

#[test]
fn boundary_eigenvalues_are_unimodular() {
    // radial limit at 64 roots of unity
    for seed in 0..20u64 {
        let u = BlockUnitary::haar(2, 2, seed);
        for k in 0..64 {
            let theta = 2.0 * std::f64::consts::PI * k as f64 / 64.0;
            let z = Complex64::from_polar(BOUNDARY_RADIUS, theta);
            let psi = u.psi(z).unwrap();
            for lambda in eig_small(&psi).unwrap() {
                assert!(
                    (lambda.norm() - 1.0).abs() <= 1e-4,
                    "seed {seed}, k {k}: |lambda| = {}",
                    lambda.norm()
                );
            }
        }
    }
}

#[test]
fn gauge_round_trip_recovers_w0() {
    let mut tested = 0;
    for seed in 0..60u64 {
        let u = BlockUnitary::haar(2, 2, seed);
        if distvar::numerics::op_norm(u.a()) > 1.0 - 1e-6 {
            continue;
        }
        let w0 = haar_unitary(2, seed + 31_337);
        let u1 = u.conjugate(&ComplexMatrix::identity(2), &w0).unwrap();
        match distvar::find_gauge_w(&u, &u1, 1e-9).unwrap() {
            GaugeOutcome::Equivalent { w, .. } => {
                let err = (&w - &w0).frobenius_norm();
                assert!(err <= 1e-8, "seed {seed}: {err:.3e}");
            }
            GaugeOutcome::NotEquivalent => panic!("conjugate pair, seed {seed}"),
        }
        tested += 1;
    }
    assert!(tested >= 50);
}

#[test]
fn defect_residual_sweep() {
    for seed in 0..100u64 {
        let u = BlockUnitary::haar(2, 2, seed);
        for k in 0..10 {
            let z = Complex64::from_polar(0.09 * (k + 1) as f64, 1.1 * k as f64 + seed as f64);
            let r = u.defect_residual(z).unwrap();
            assert!(r <= 1e-10, "seed {seed}, k {k}: {r:.3e}");
        }
    }
}

#[test]
fn variety_polynomial_equals_moment_description() {
    // equality of transfer functions forces equality of polynomials
    for seed in 0..30u64 {
        let u = BlockUnitary::haar(2, 2, seed);
        let w0 = haar_unitary(2, seed + 1);
        let u1 = u.conjugate(&ComplexMatrix::identity(2), &w0).unwrap();
        assert!(transfer_equal(&u, &u1, 1e-9).unwrap());
        let d = variety_poly(&u)
            .unwrap()
            .relative_distance(&variety_poly(&u1).unwrap());
        assert!(d <= 1e-9, "seed {seed}: {d:.3e}");
    }
}

#[test]
fn fibers_of_multiset_comparison_are_order_free() {
    let a = [c(0.1, 0.2), c(-0.4, 0.0), c(0.0, 0.9)];
    let b = [c(0.0, 0.9), c(0.1, 0.2), c(-0.4, 0.0)];
    assert_eq!(multiset_max_distance(&a, &b).unwrap(), 0.0);
}
