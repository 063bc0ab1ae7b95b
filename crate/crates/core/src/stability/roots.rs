use num_complex::Complex64;

use crate::error::{Error, Result};

fn horner_with_derivative(coeffs: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let zero = Complex64::new(0.0, 0.0);
    coeffs.iter().rev().fold((zero, zero), |(p, dp), &c| (p * z + c, dp * z + p))
}

/// All complex roots of `Σ coeffs[k]·z^k` (lowest degree first), by
/// Aberth–Ehrlich simultaneous iteration.
pub fn polynomial_roots(coeffs: &[f64]) -> Result<Vec<Complex64>> {
    let degree = coeffs
        .iter()
        .rposition(|&c| c != 0.0)
        .ok_or_else(|| Error::InvalidParams("zero polynomial has no finite roots".into()))?;
    if degree == 0 {
        return Ok(Vec::new());
    }
    let monic: Vec<f64> = coeffs[..=degree].iter().map(|c| c / coeffs[degree]).collect();

    // Cauchy bound on the root moduli sets the starting circle.
    let radius = 1.0 + monic[..degree].iter().fold(0.0f64, |m, c| m.max(c.abs()));
    let mut z: Vec<Complex64> = (0..degree)
        .map(|j| Complex64::from_polar(radius, 0.4 + std::f64::consts::TAU * j as f64 / degree as f64))
        .collect();

    for _ in 0..500 {
        let mut largest = 0.0f64;
        for i in 0..degree {
            let (p, dp) = horner_with_derivative(&monic, z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let repulsion: Complex64 = (0..degree)
                .filter(|&j| j != i)
                .map(|j| (z[i] - z[j]).inv())
                .sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            z[i] -= step;
            largest = largest.max(step.norm() / z[i].norm().max(1.0));
        }
        if largest < 1e-15 {
            break;
        }
    }
    if z.iter().any(|r| !r.is_finite()) {
        return Err(Error::InvalidParams("root iteration diverged".into()));
    }
    Ok(z)
}
