//! Simultaneous polynomial root finding (Aberth iteration) for the low
//! degrees that show up here: characteristic polynomials of the blocks
//! and fiber polynomials of the variety, all of degree at most 4.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Relative magnitude below which a leading coefficient is deflated away.
const DEFLATION_TOL: f64 = 1e-12;
/// Residual contract: |p(root)| <= RESIDUAL_TOL * max|coeff|.
const RESIDUAL_TOL: f64 = 1e-9;
const MAX_ITER: usize = 500;

/// All roots with multiplicity of `sum coeffs[k] x^k` (ascending order).
///
/// The identically-zero polynomial is rejected; a nonzero constant has an
/// empty root multiset.
pub fn poly_roots(coeffs: &[Complex64]) -> Result<Vec<Complex64>> {
    let max_mag = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
    if coeffs.is_empty() || max_mag == 0.0 {
        return Err(Error::DegenerateInput(
            "root finding on the identically-zero polynomial".into(),
        ));
    }
    if coeffs.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
        return Err(Error::NonFinite("polynomial coefficient".into()));
    }

    // deflate negligible leading coefficients
    let mut degree = coeffs.len() - 1;
    while degree > 0 && coeffs[degree].norm() <= DEFLATION_TOL * max_mag {
        degree -= 1;
    }
    if degree == 0 {
        return Ok(Vec::new());
    }

    let lead = coeffs[degree];
    let monic: Vec<Complex64> = coeffs[..=degree].iter().map(|c| c / lead).collect();

    let roots = match degree {
        1 => vec![-monic[0]],
        2 => quadratic_roots(monic[0], monic[1]),
        _ => aberth(&monic)?,
    };

    let worst = roots
        .iter()
        .map(|&r| eval(coeffs, r).norm())
        .fold(0.0, f64::max);
    if worst > RESIDUAL_TOL * max_mag {
        return Err(Error::NonConvergence { residual: worst / max_mag });
    }
    Ok(roots)
}

/// Horner evaluation of an ascending coefficient slice.
pub fn eval(coeffs: &[Complex64], x: Complex64) -> Complex64 {
    coeffs
        .iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * x + c)
}

/// Expands `prod (x - r_i)` into ascending monic coefficients.
/// Serves as the independent oracle opposite `poly_roots` in tests.
pub fn expand_from_roots(roots: &[Complex64]) -> Vec<Complex64> {
    let mut coeffs = vec![Complex64::new(1.0, 0.0)];
    for &r in roots {
        let mut next = vec![Complex64::new(0.0, 0.0); coeffs.len() + 1];
        for (k, &c) in coeffs.iter().enumerate() {
            next[k + 1] += c;
            next[k] -= r * c;
        }
        coeffs = next;
    }
    coeffs
}

/// Roots of x^2 + b x + c, cancellation-safe.
fn quadratic_roots(c0: Complex64, c1: Complex64) -> Vec<Complex64> {
    let b = c1;
    let c = c0;
    let disc = b * b - c * 4.0;
    let sq = disc.sqrt();
    // pick the sign that avoids cancellation in b + sq
    let q = if (b.conj() * sq).re >= 0.0 {
        -(b + sq) * 0.5
    } else {
        -(b - sq) * 0.5
    };
    if q.norm() == 0.0 {
        // b = c = 0 up to the branch choice: double root at -b/2
        let r = -b * 0.5;
        vec![r, r]
    } else {
        vec![q, c / q]
    }
}

fn derivative(coeffs: &[Complex64]) -> Vec<Complex64> {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, &c)| c * (k as f64))
        .collect()
}

/// Aberth–Ehrlich iteration on a monic polynomial of degree >= 3.
fn aberth(monic: &[Complex64]) -> Result<Vec<Complex64>> {
    let d = monic.len() - 1;
    let deriv = derivative(monic);

    // start points on a scaled circle with an irrational angle offset
    let bound = 1.0
        + monic[..d]
            .iter()
            .map(|c| c.norm())
            .fold(0.0, f64::max);
    let offset = std::f64::consts::SQRT_2;
    let mut x: Vec<Complex64> = (0..d)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * (k as f64) / (d as f64) + offset;
            Complex64::from_polar(bound * 0.7, theta)
        })
        .collect();

    for _ in 0..MAX_ITER {
        let mut max_step = 0.0_f64;
        for i in 0..d {
            let p = eval(monic, x[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let dp = eval(&deriv, x[i]);
            let w = if dp.norm() == 0.0 {
                // flat spot: nudge off it
                Complex64::new(1e-8, 1e-8)
            } else {
                p / dp
            };
            let mut s = Complex64::new(0.0, 0.0);
            for j in 0..d {
                if j == i {
                    continue;
                }
                let diff = x[i] - x[j];
                if diff.norm() < 1e-300 {
                    continue;
                }
                s += diff.inv();
            }
            let denom = Complex64::new(1.0, 0.0) - w * s;
            let step = if denom.norm() < 1e-300 { w } else { w / denom };
            x[i] -= step;
            max_step = max_step.max(step.norm() / (1.0 + x[i].norm()));
        }
        if max_step <= 1e-15 {
            break;
        }
    }
    Ok(x)
}
