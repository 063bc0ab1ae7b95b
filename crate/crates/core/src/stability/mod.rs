//! Linear stability of the scheme.
//!
//! On `x' = λx` one step multiplies the state by
//!
//! ```text
//! R(z) = e_K((1 − θ)z) / e_K(−θz),   e_K(w) = Σ_{k=0}^{K} w^k / k!
//! ```
//!
//! with `z = λΔt`. For systems the same rational function is applied to
//! the matrix `ΔtA`.

mod classify;
mod grid;
mod matrix_fn;
mod roots;

pub use classify::{is_a_stable, is_l_stable, poles, AStability, Sampler};
pub use grid::{sample_region, StabilityGrid};
pub use matrix_fn::{
    contraction_certificate, log_norm_euclid, matrix_r, spectral_norm, symmetric_eigenvalues,
    ContractionCertificate,
};
pub use roots::polynomial_roots;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Coefficients `1/k!` of the degree-`K` truncated exponential, lowest first.
pub fn truncated_exp_coeffs(order: usize) -> Vec<f64> {
    let mut c = Vec::with_capacity(order + 1);
    let mut term = 1.0;
    for k in 0..=order {
        if k > 0 {
            term /= k as f64;
        }
        c.push(term);
    }
    c
}

/// `e_K(w)` by Horner.
pub fn truncated_exp(w: Complex64, order: usize) -> Complex64 {
    truncated_exp_coeffs(order)
        .iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * w + c)
}

/// Amplification factor `R(z)` of the `(θ, K)` scheme.
pub fn scalar_r(z: Complex64, theta: f64, order: usize) -> Result<Complex64> {
    let num = truncated_exp(z * (1.0 - theta), order);
    let den = truncated_exp(z * -theta, order);
    if den.norm() < 1e-300 {
        return Err(Error::Pole { re: z.re, im: z.im });
    }
    Ok(num / den)
}

/// `|R(z)|`, with poles mapped to `+∞`.
pub fn modulus(z: Complex64, theta: f64, order: usize) -> f64 {
    scalar_r(z, theta, order).map_or(f64::INFINITY, |r| r.norm())
}

/// Order of accuracy of the `(θ, K)` scheme: `K + 1` for the central scheme
/// with odd `K`, otherwise `K`.
pub fn scheme_order(theta: f64, order: usize) -> usize {
    if theta == 0.5 && order % 2 == 1 {
        order + 1
    } else {
        order
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn closed_form_examples() {
        for theta in [0.0, 0.3, 0.5, 1.0] {
            for k in 1..7 {
                assert_eq!(scalar_r(c(0.0, 0.0), theta, k).unwrap(), c(1.0, 0.0));
            }
        }
        assert!(scalar_r(c(-2.0, 0.0), 0.5, 1).unwrap().norm() < 1e-16);
        assert_eq!(scalar_r(c(-2.0, 0.0), 0.0, 1).unwrap(), c(-1.0, 0.0));
        assert!((scalar_r(c(-1.0, 0.0), 1.0, 1).unwrap() - 0.5).norm() < 1e-16);
    }

    #[test]
    fn pole_reported() {
        // Backward Euler: 1/(1 − z) has its pole at z = 1.
        assert!(matches!(
            scalar_r(c(1.0, 0.0), 1.0, 1),
            Err(Error::Pole { .. })
        ));
        assert_eq!(modulus(c(1.0, 0.0), 1.0, 1), f64::INFINITY);
    }

    #[test]
    fn truncated_exponential_values() {
        assert_eq!(truncated_exp_coeffs(3), vec![1.0, 1.0, 0.5, 1.0 / 6.0]);
        let w = truncated_exp(c(0.0, 1.0), 2);
        assert!((w - c(0.5, 1.0)).norm() < 1e-16);
    }

    #[test]
    fn order_rule() {
        assert_eq!(scheme_order(0.5, 3), 4);
        assert_eq!(scheme_order(0.5, 4), 4);
        assert_eq!(scheme_order(0.0, 3), 3);
        assert_eq!(scheme_order(1.0, 5), 5);
    }

    /// Checks `|R(z) − e^z| ≤ 2C|z|^{q+1}` along a ray, with `C` fitted on
    /// the outermost samples and a round-off floor.
    fn consistent_along(theta: f64, k: usize, angle: f64) -> std::result::Result<(), String> {
        let q = scheme_order(theta, k) as i32;
        let samples: Vec<(f64, f64)> = (0..24)
            .map(|i| {
                let r = 0.1 * 0.7f64.powi(i);
                let z = Complex64::from_polar(r, angle);
                (r, (scalar_r(z, theta, k).unwrap() - z.exp()).norm())
            })
            .collect();
        let fit = samples[..3]
            .iter()
            .map(|(r, e)| e / r.powi(q + 1))
            .fold(0.0, f64::max);
        for (r, e) in samples {
            let bound = 2.0 * fit * r.powi(q + 1) + 1e-14;
            if e > bound {
                return Err(format!("|z|={r}: error {e} exceeds {bound}"));
            }
        }
        Ok(())
    }

    #[test]
    fn lower_order_would_be_detected() {
        // The forward scheme is only order K; claiming K+1 must fail.
        let q = 3;
        let (r0, r1): (f64, f64) = (0.1, 0.1 * 0.7f64.powi(10));
        let err = |r: f64| (scalar_r(c(-r, 0.0), 0.0, q).unwrap() - (-r).exp()).norm();
        let fit = err(r0) / r0.powi(q as i32 + 2);
        assert!(err(r1) > 2.0 * fit * r1.powi(q as i32 + 2) + 1e-14);
    }

    proptest! {
        #[test]
        fn consistency_with_exponential(
            theta in prop::sample::select(vec![0.0, 0.25, 0.5, 0.75, 1.0]),
            k in 1usize..=6,
            angle in 0.0f64..std::f64::consts::TAU,
        ) {
            prop_assert!(consistent_along(theta, k, angle).is_ok(), "{:?}", consistent_along(theta, k, angle));
        }

        #[test]
        fn conjugate_symmetry(
            theta in 0.0f64..=1.0,
            k in 1usize..=8,
            re in -20.0f64..5.0,
            im in -20.0f64..20.0,
        ) {
            let z = c(re, im);
            if let (Ok(a), Ok(b)) = (scalar_r(z, theta, k), scalar_r(z.conj(), theta, k)) {
                prop_assert!((a.conj() - b).norm() <= 1e-12 * a.norm().max(1.0));
            }
        }
    }
}
