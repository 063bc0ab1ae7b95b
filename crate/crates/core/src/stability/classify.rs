use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::roots::polynomial_roots;
use super::{modulus, truncated_exp_coeffs};
use crate::error::Result;

/// Sample densities for the A-stability certificate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Sampler {
    /// Points on the upper imaginary axis, spread as `i·tan(φ)`.
    pub boundary_points: usize,
    /// Log-spaced points on the negative real axis.
    pub real_points: usize,
    pub radial: usize,
    pub angular: usize,
    pub r_min: f64,
    pub r_max: f64,
    /// Allowed excess of `|R|` over 1.
    pub tolerance: f64,
}

impl Default for Sampler {
    fn default() -> Self {
        Self {
            boundary_points: 10_000,
            real_points: 2_000,
            radial: 200,
            angular: 200,
            r_min: 1e-3,
            r_max: 1e6,
            tolerance: 1e-10,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AStability {
    pub stable: bool,
    /// A left-half-plane point with `|R| > 1 + tolerance` (or a pole there).
    pub witness: Option<Complex64>,
    /// Largest `|R|` seen; `+∞` when a pole lies in the closed left half-plane.
    pub max_modulus: f64,
}

/// Poles of `R`, i.e. the zeros of `e_K(−θz)`. Empty for the explicit scheme.
pub fn poles(theta: f64, order: usize) -> Result<Vec<Complex64>> {
    if theta == 0.0 {
        return Ok(Vec::new());
    }
    Ok(polynomial_roots(&truncated_exp_coeffs(order))?
        .into_iter()
        .map(|w| -w / theta)
        .collect())
}

fn log_space(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> {
    let (a, b) = (lo.ln(), hi.ln());
    (0..n).map(move |i| (a + (b - a) * i as f64 / (n - 1).max(1) as f64).exp())
}

struct Scan {
    tol: f64,
    max: f64,
    worst: Option<(Complex64, f64)>,
}

impl Scan {
    fn visit(&mut self, z: Complex64, m: f64) {
        self.max = self.max.max(m);
        if m > 1.0 + self.tol && self.worst.is_none_or(|(_, w)| m > w) {
            self.worst = Some((z, m));
        }
    }
}

/// Numerical A-stability certificate for the `(θ, K)` scheme.
///
/// The negative real axis and the imaginary axis are sampled densely, the
/// limit of `|R|` at infinity is checked, poles are located, and a
/// log-polar grid covers the interior of the left half-plane. Only the upper
/// half is sampled since `|R(z̄)| = |R(z)|`.
pub fn is_a_stable(theta: f64, order: usize, sampler: &Sampler) -> Result<AStability> {
    let mut scan = Scan {
        tol: sampler.tolerance,
        max: 0.0,
        worst: None,
    };

    for x in log_space(sampler.r_min, sampler.r_max * 100.0, sampler.real_points) {
        let z = Complex64::new(-x, 0.0);
        scan.visit(z, modulus(z, theta, order));
    }
    if let Some((z, _)) = scan.worst {
        return Ok(AStability {
            stable: false,
            witness: Some(z),
            max_modulus: scan.max,
        });
    }

    let n = sampler.boundary_points.max(2);
    for i in 0..n {
        let phi = std::f64::consts::FRAC_PI_2 * i as f64 / n as f64;
        let z = Complex64::new(0.0, phi.tan());
        scan.visit(z, modulus(z, theta, order));
    }
    let at_infinity = if theta == 0.0 {
        f64::INFINITY
    } else {
        ((1.0 - theta) / theta).powi(order as i32)
    };
    if at_infinity > 1.0 + sampler.tolerance && scan.worst.is_none() {
        let z = Complex64::new(0.0, sampler.r_max * 100.0);
        scan.worst = Some((z, modulus(z, theta, order)));
    }

    if let Some(p) = poles(theta, order)?.into_iter().find(|p| p.re <= 1e-12 * p.norm()) {
        return Ok(AStability {
            stable: false,
            witness: Some(p),
            max_modulus: f64::INFINITY,
        });
    }

    let radii: Vec<f64> = log_space(sampler.r_min, sampler.r_max, sampler.radial).collect();
    for j in 1..=sampler.angular {
        let angle = std::f64::consts::FRAC_PI_2 * (1.0 + j as f64 / sampler.angular as f64);
        for &r in &radii {
            let z = Complex64::from_polar(r, angle);
            scan.visit(z, modulus(z, theta, order));
        }
    }

    Ok(AStability {
        stable: scan.worst.is_none(),
        witness: scan.worst.map(|(z, _)| z),
        max_modulus: scan.max,
    })
}

/// A-stable and `R(z) → 0` along the negative real axis.
pub fn is_l_stable(theta: f64, order: usize) -> Result<bool> {
    if !is_a_stable(theta, order, &Sampler::default())?.stable {
        return Ok(false);
    }
    let far = modulus(Complex64::new(-1e6, 0.0), theta, order);
    let farther = modulus(Complex64::new(-1e8, 0.0), theta, order);
    Ok(far <= 1e-4 && farther <= 1e-6)
}
