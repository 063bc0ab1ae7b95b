use std::sync::Arc;

use super::{affine_update, Problem, Side};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::taylor::CoeffTable;

/// `F(k)`: coefficient `k` of the forcing `B(t)` expanded about `t_i`.
pub type ForcingFn = dyn Fn(f64, usize) -> Vec<f64> + Send + Sync;

/// `x' = A·x + B(t)`.
#[derive(Clone)]
pub struct LinearSystem {
    a: Matrix,
    forcing: Option<Arc<ForcingFn>>,
    initial: Vec<f64>,
    name: String,
}

impl LinearSystem {
    pub fn new(a: Matrix, forcing: Option<Arc<ForcingFn>>) -> Result<Self> {
        if !a.is_square() {
            return Err(Error::DimensionMismatch {
                expected: a.rows(),
                found: a.cols(),
            });
        }
        let initial = vec![1.0; a.rows()];
        Ok(Self {
            a,
            forcing,
            initial,
            name: "linear".into(),
        })
    }

    pub fn homogeneous(a: Matrix) -> Result<Self> {
        Self::new(a, None)
    }

    pub fn with_initial(mut self, initial: Vec<f64>) -> Result<Self> {
        if initial.len() != self.a.rows() {
            return Err(Error::DimensionMismatch {
                expected: self.a.rows(),
                found: initial.len(),
            });
        }
        self.initial = initial;
        Ok(self)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn matrix(&self) -> &Matrix {
        &self.a
    }
}

impl std::fmt::Debug for LinearSystem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("LinearSystem")
            .field("a", &self.a)
            .field("forced", &self.forcing.is_some())
            .finish()
    }
}

impl Problem for LinearSystem {
    fn name(&self) -> &str {
        &self.name
    }

    fn dim(&self) -> usize {
        self.a.rows()
    }

    fn next_coeff(&self, table: &CoeffTable, _side: Side, out: &mut [f64]) -> Result<()> {
        if table.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: table.dim(),
            });
        }
        let k = table.order();
        let extra = match &self.forcing {
            Some(f) => {
                let v = f(table.base_time(), k);
                if v.len() != self.dim() {
                    return Err(Error::DimensionMismatch {
                        expected: self.dim(),
                        found: v.len(),
                    });
                }
                v
            }
            None => vec![0.0; self.dim()],
        };
        affine_update(&self.a, table, &extra, out);
        Ok(())
    }

    fn default_initial(&self) -> Vec<f64> {
        self.initial.clone()
    }

    fn linear_matrix(&self) -> Option<Matrix> {
        Some(self.a.clone())
    }
}
