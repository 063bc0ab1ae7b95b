use super::{affine_update, Problem, Side};
use crate::error::Result;
use crate::matrix::Matrix;
use crate::taylor::{triple_product, CoeffTable};

/// `U' = V`, `V' = −U + ε(1 − U²)V`.
#[derive(Debug, Clone, PartialEq)]
pub struct VanDerPol {
    pub epsilon: f64,
    a: Matrix,
}

impl VanDerPol {
    pub fn new(epsilon: f64) -> Self {
        let a = Matrix::from_row_major(2, 2, vec![0.0, 1.0, -1.0, epsilon]).expect("2x2");
        Self { epsilon, a }
    }
}

impl Problem for VanDerPol {
    fn name(&self) -> &str {
        "van-der-pol"
    }

    fn dim(&self) -> usize {
        2
    }

    fn next_coeff(&self, table: &CoeffTable, _side: Side, out: &mut [f64]) -> Result<()> {
        let k = table.order();
        let cubic = if self.epsilon == 0.0 {
            0.0
        } else {
            let u = table.series(0);
            let v = table.series(1);
            -self.epsilon * triple_product(&u, &u, &v, k)?
        };
        affine_update(&self.a, table, &[0.0, cubic], out);
        Ok(())
    }

    fn default_initial(&self) -> Vec<f64> {
        vec![2.0, 0.0]
    }

    fn linear_matrix(&self) -> Option<Matrix> {
        (self.epsilon == 0.0).then(|| self.a.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problems::LinearSystem;
    use crate::stepper::build_coeff_table;

    #[test]
    fn low_order_coefficients_at_start() {
        for &eps in &[0.0, 0.1, 10.0, 100.0] {
            let t = build_coeff_table(&VanDerPol::new(eps), 0.0, &[2.0, 0.0], 3).unwrap();
            assert_eq!(t.coeff(1), &[0.0, -2.0]);
            assert_eq!(t.coeff(2)[0], -1.0);
            assert!((t.coeff(2)[1] - 3.0 * eps).abs() <= 1e-14 * (1.0 + eps));
            assert!((t.coeff(3)[0] - eps).abs() <= 1e-14 * (1.0 + eps));
            let v3 = 1.0 / 3.0 - 3.0 * eps * eps;
            assert!((t.coeff(3)[1] - v3).abs() <= 1e-13 * (1.0 + v3.abs()));
        }
    }

    #[test]
    fn harmonic_limit_matches_rotation() {
        let vdp = VanDerPol::new(0.0);
        let rot = LinearSystem::homogeneous(Matrix::from_rows(&[[0.0, 1.0], [-1.0, 0.0]]).unwrap()).unwrap();
        let a = build_coeff_table(&vdp, 1.3, &[0.7, -0.2], 9).unwrap();
        let b = build_coeff_table(&rot, 1.3, &[0.7, -0.2], 9).unwrap();
        assert_eq!(a, b);
    }
}
