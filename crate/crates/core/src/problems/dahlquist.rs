use super::{Problem, Side};
use crate::error::Result;
use crate::matrix::Matrix;
use crate::taylor::CoeffTable;

/// Scalar test equation `x' = λx`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dahlquist {
    pub lambda: f64,
    pub x0: f64,
}

impl Dahlquist {
    pub fn new(lambda: f64) -> Self {
        Self { lambda, x0: 1.0 }
    }

    pub fn with_initial(mut self, x0: f64) -> Self {
        self.x0 = x0;
        self
    }
}

impl Problem for Dahlquist {
    fn name(&self) -> &str {
        "dahlquist"
    }

    fn dim(&self) -> usize {
        1
    }

    fn next_coeff(&self, table: &CoeffTable, _side: Side, out: &mut [f64]) -> Result<()> {
        let k = table.order();
        out[0] = self.lambda * table.coeff(k)[0] / (k + 1) as f64;
        Ok(())
    }

    fn default_initial(&self) -> Vec<f64> {
        vec![self.x0]
    }

    fn exact_solution(&self, t: f64) -> Option<Vec<f64>> {
        Some(vec![self.x0 * (self.lambda * t).exp()])
    }

    fn linear_matrix(&self) -> Option<Matrix> {
        Some(Matrix::from_diag(&[self.lambda]))
    }
}
