use serde::{Deserialize, Serialize};

use super::lu::LuDecomposition;
use crate::error::{Error, Result};
use crate::matrix::Matrix;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NewtonConfig {
    /// Converged once `‖r(y)‖_∞` drops to this value.
    pub abs_tol: f64,
    /// Converged once `‖δ‖_∞ ≤ step_tol · max(1, ‖y‖_∞)`.
    pub step_tol: f64,
    pub max_iters: usize,
    /// Corrections applied before the residual test can stop the iteration.
    pub min_iters: usize,
    /// Forward-difference perturbation `h_j = fd_epsilon · max(1, |y_j|)`.
    pub fd_epsilon: f64,
    pub damping: bool,
    pub max_halvings: u32,
}

impl Default for NewtonConfig {
    fn default() -> Self {
        Self {
            abs_tol: 1e-14,
            step_tol: 1e-13,
            max_iters: 25,
            min_iters: 1,
            fd_epsilon: 1e-9,
            damping: true,
            max_halvings: 8,
        }
    }
}

impl NewtonConfig {
    pub fn validate(&self) -> Result<()> {
        let positive = [self.abs_tol, self.step_tol, self.fd_epsilon]
            .iter()
            .all(|v| *v > 0.0 && v.is_finite());
        if !positive {
            return Err(Error::InvalidConfig(
                "Newton tolerances must be positive and finite".into(),
            ));
        }
        if self.max_iters == 0 || self.min_iters > self.max_iters {
            return Err(Error::InvalidConfig(
                "Newton needs 1 <= max_iters and min_iters <= max_iters".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NewtonOutcome {
    pub root: Vec<f64>,
    pub iters: usize,
    pub residual_norm: f64,
}

fn max_norm(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m, x| m.max(x.abs()))
}

/// Forward-difference Jacobian of `residual` at `y`, given `r0 = residual(y)`.
pub fn fd_jacobian<F>(residual: &mut F, y: &[f64], r0: &[f64], fd_epsilon: f64) -> Result<Matrix>
where
    F: FnMut(&[f64]) -> Result<Vec<f64>>,
{
    let n = y.len();
    let mut jac = Matrix::zeros(r0.len(), n);
    let mut probe = y.to_vec();
    for j in 0..n {
        // Power-of-two step, so y + h loses no bits when |y| is not much larger than h.
        let h = (fd_epsilon * y[j].abs().max(1.0)).log2().round().exp2();
        probe[j] = y[j] + h;
        // Use the representable step actually taken.
        let h = probe[j] - y[j];
        let rj = residual(&probe)?;
        probe[j] = y[j];
        for (i, (a, b)) in rj.iter().zip(r0).enumerate() {
            jac[(i, j)] = (a - b) / h;
        }
    }
    Ok(jac)
}

/// Damped Newton iteration `J·δ = −r` with a forward-difference Jacobian.
pub fn newton_solve<F>(mut residual: F, guess: &[f64], cfg: &NewtonConfig) -> Result<NewtonOutcome>
where
    F: FnMut(&[f64]) -> Result<Vec<f64>>,
{
    cfg.validate()?;
    let mut y = guess.to_vec();
    let mut r = residual(&y)?;
    if r.len() != y.len() {
        return Err(Error::DimensionMismatch {
            expected: y.len(),
            found: r.len(),
        });
    }
    let mut r_norm = max_norm(&r);
    if cfg.min_iters == 0 && r_norm <= cfg.abs_tol {
        return Ok(NewtonOutcome {
            root: y,
            iters: 0,
            residual_norm: r_norm,
        });
    }

    for iter in 1..=cfg.max_iters {
        let jac = fd_jacobian(&mut residual, &y, &r, cfg.fd_epsilon)?;
        let lu = LuDecomposition::new(&jac).map_err(|e| match e {
            Error::SingularMatrix { .. } => Error::SingularJacobian,
            other => other,
        })?;
        let neg_r: Vec<f64> = r.iter().map(|v| -v).collect();
        let delta = lu.solve(&neg_r)?;
        let delta_norm = max_norm(&delta);

        let scale = max_norm(&y).max(1.0);
        if delta_norm <= cfg.step_tol * scale {
            for (yi, di) in y.iter_mut().zip(&delta) {
                *yi += di;
            }
            let r_new = residual(&y)?;
            return Ok(NewtonOutcome {
                residual_norm: max_norm(&r_new),
                root: y,
                iters: iter,
            });
        }

        let (y_next, r_next) = line_search(&mut residual, &y, &delta, r_norm, cfg)?;
        y = y_next;
        r = r_next;
        r_norm = max_norm(&r);
        if iter >= cfg.min_iters && r_norm <= cfg.abs_tol {
            return Ok(NewtonOutcome {
                root: y,
                iters: iter,
                residual_norm: r_norm,
            });
        }
    }
    Err(Error::NewtonFailure {
        iters: cfg.max_iters,
        residual: r_norm,
    })
}

/// Tries `y + λδ` for `λ = 1, 1/2, …`; falls back to the full step when no
/// halving reduces the residual.
fn line_search<F>(
    residual: &mut F,
    y: &[f64],
    delta: &[f64],
    r_norm: f64,
    cfg: &NewtonConfig,
) -> Result<(Vec<f64>, Vec<f64>)>
where
    F: FnMut(&[f64]) -> Result<Vec<f64>>,
{
    let at = |lambda: f64| -> Vec<f64> { y.iter().zip(delta).map(|(a, d)| a + lambda * d).collect() };
    let full = at(1.0);
    let full_r = residual(&full);
    if let Ok(ref rf) = full_r {
        if !cfg.damping || max_norm(rf) < r_norm {
            return Ok((full, rf.clone()));
        }
    } else if !cfg.damping {
        return Err(full_r.unwrap_err());
    }

    let mut lambda = 1.0;
    for _ in 0..cfg.max_halvings {
        lambda *= 0.5;
        let trial = at(lambda);
        if let Ok(rt) = residual(&trial) {
            if max_norm(&rt) < r_norm {
                return Ok((trial, rt));
            }
        }
    }
    full_r.map(|rf| (full, rf))
}
