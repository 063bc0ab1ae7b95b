use serde::{Deserialize, Serialize};

use super::classify::{is_a_stable, Sampler};
use super::truncated_exp_coeffs;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::nonlinear::LuDecomposition;

fn square(a: &Matrix) -> Result<usize> {
    if a.is_square() {
        Ok(a.rows())
    } else {
        Err(Error::DimensionMismatch {
            expected: a.rows(),
            found: a.cols(),
        })
    }
}

/// `e_K(M)` by Horner on matrices.
fn truncated_exp_matrix(m: &Matrix, order: usize) -> Result<Matrix> {
    let n = m.rows();
    let mut acc = Matrix::zeros(n, n);
    for c in truncated_exp_coeffs(order).into_iter().rev() {
        acc = acc.matmul(m)?;
        for i in 0..n {
            acc[(i, i)] += c;
        }
    }
    Ok(acc)
}

/// `R(θ, ΔtA) = e_K(−θΔtA)⁻¹ e_K((1 − θ)ΔtA)`; `dt_a` is the product `ΔtA`.
pub fn matrix_r(theta: f64, dt_a: &Matrix, order: usize) -> Result<Matrix> {
    square(dt_a)?;
    let num = truncated_exp_matrix(&dt_a.scaled(1.0 - theta), order)?;
    let den = truncated_exp_matrix(&dt_a.scaled(-theta), order)?;
    LuDecomposition::new(&den)?.solve_matrix(&num)
}

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, ascending.
///
/// Only the upper triangle is read.
pub fn symmetric_eigenvalues(a: &Matrix) -> Result<Vec<f64>> {
    let n = square(a)?;
    let mut m = a.clone();
    for i in 0..n {
        for j in 0..i {
            m[(i, j)] = m[(j, i)];
        }
    }
    let scale = m.as_slice().iter().fold(0.0f64, |s, v| s.max(v.abs()));
    for _sweep in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .map(|(i, j)| m[(i, j)] * m[(i, j)])
            .sum();
        if off.sqrt() <= 1e-15 * scale || off == 0.0 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = m[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let tau = (m[(q, q)] - m[(p, p)]) / (2.0 * apq);
                let t = tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (mkp, mkq) = (m[(k, p)], m[(k, q)]);
                    m[(k, p)] = c * mkp - s * mkq;
                    m[(k, q)] = s * mkp + c * mkq;
                }
                for k in 0..n {
                    let (mpk, mqk) = (m[(p, k)], m[(q, k)]);
                    m[(p, k)] = c * mpk - s * mqk;
                    m[(q, k)] = s * mpk + c * mqk;
                }
            }
        }
    }
    let mut eig: Vec<f64> = (0..n).map(|i| m[(i, i)]).collect();
    eig.sort_by(f64::total_cmp);
    Ok(eig)
}

/// Euclidean logarithmic norm `μ₂(A) = λ_max((A + Aᵀ)/2)`.
pub fn log_norm_euclid(a: &Matrix) -> Result<f64> {
    let sym = a.add(&a.transpose())?.scaled(0.5);
    Ok(symmetric_eigenvalues(&sym)?.last().copied().unwrap_or(0.0))
}

/// `‖M‖₂`, the square root of the largest eigenvalue of `MᵀM`.
pub fn spectral_norm(m: &Matrix) -> Result<f64> {
    let gram = m.transpose().matmul(m)?;
    let top = symmetric_eigenvalues(&gram)?.last().copied().unwrap_or(0.0);
    Ok(top.max(0.0).sqrt())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ContractionCertificate {
    /// Both hypotheses hold and the measured norm respects the bound.
    pub granted: bool,
    pub log_norm: f64,
    pub a_stable: bool,
    /// `‖R(θ, ΔtA)‖₂`, computed only when both hypotheses hold.
    pub spectral_norm: Option<f64>,
}

/// Checks `μ₂(A) ≤ 0` and A-stability of `(θ, K)`, and then that one step
/// does not grow the Euclidean norm: `‖R(θ, ΔtA)‖₂ ≤ 1 + 1e-8`.
pub fn contraction_certificate(
    theta: f64,
    order: usize,
    a: &Matrix,
    dt: f64,
) -> Result<ContractionCertificate> {
    let log_norm = log_norm_euclid(a)?;
    if log_norm > 0.0 {
        return Ok(ContractionCertificate {
            granted: false,
            log_norm,
            a_stable: false,
            spectral_norm: None,
        });
    }
    let a_stable = is_a_stable(theta, order, &Sampler::default())?.stable;
    if !a_stable {
        return Ok(ContractionCertificate {
            granted: false,
            log_norm,
            a_stable,
            spectral_norm: None,
        });
    }
    let norm = spectral_norm(&matrix_r(theta, &a.scaled(dt), order)?)?;
    Ok(ContractionCertificate {
        granted: norm <= 1.0 + 1e-8,
        log_norm,
        a_stable,
        spectral_norm: Some(norm),
    })
}
