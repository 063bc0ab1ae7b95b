use super::{affine_update, Problem, Side};
use crate::error::Result;
use crate::matrix::Matrix;
use crate::taylor::{triple_product, CoeffTable};

/// Cubic Duffing oscillator `x'' + αx' + βx + γx³ = 0` as the system
/// `(x₁, x₂) = (x, x')`.
///
/// With `(α, β, γ) = (−3, 2, −2)` and `x(0) = 1/2, x'(0) = 1/4` the logistic
/// function `1/(1 + e^{−t})` is an exact solution.
#[derive(Debug, Clone, PartialEq)]
pub struct Duffing {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    a: Matrix,
}

const LOGISTIC_PARAMS: (f64, f64, f64) = (-3.0, 2.0, -2.0);

impl Duffing {
    pub fn new(alpha: f64, beta: f64, gamma: f64) -> Self {
        let a = Matrix::from_row_major(2, 2, vec![0.0, 1.0, -beta, -alpha]).expect("2x2");
        Self {
            alpha,
            beta,
            gamma,
            a,
        }
    }

    /// Parameters admitting the logistic exact solution.
    pub fn logistic() -> Self {
        let (a, b, g) = LOGISTIC_PARAMS;
        Self::new(a, b, g)
    }

    fn is_logistic(&self) -> bool {
        (self.alpha, self.beta, self.gamma) == LOGISTIC_PARAMS
    }
}

impl Default for Duffing {
    fn default() -> Self {
        Self::logistic()
    }
}

impl Problem for Duffing {
    fn name(&self) -> &str {
        "duffing"
    }

    fn dim(&self) -> usize {
        2
    }

    fn next_coeff(&self, table: &CoeffTable, _side: Side, out: &mut [f64]) -> Result<()> {
        let k = table.order();
        let x1 = table.series(0);
        let cubic = if self.gamma == 0.0 {
            0.0
        } else {
            -self.gamma * triple_product(&x1, &x1, &x1, k)?
        };
        affine_update(&self.a, table, &[0.0, cubic], out);
        Ok(())
    }

    fn default_initial(&self) -> Vec<f64> {
        vec![0.5, 0.25]
    }

    fn exact_solution(&self, t: f64) -> Option<Vec<f64>> {
        self.is_logistic().then(|| {
            let x = 1.0 / (1.0 + (-t).exp());
            vec![x, x * (1.0 - x)]
        })
    }

    fn linear_matrix(&self) -> Option<Matrix> {
        (self.gamma == 0.0).then(|| self.a.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problems::LinearSystem;
    use crate::stepper::build_coeff_table;

    #[test]
    fn first_coefficient_at_logistic_start() {
        // x''(0) = x(1-x)(1-2x) at x = 1/2 vanishes.
        let t = build_coeff_table(&Duffing::logistic(), 0.0, &[0.5, 0.25], 1).unwrap();
        assert!((t.coeff(1)[0] - 0.25).abs() < 1e-16);
        assert!(t.coeff(1)[1].abs() < 1e-16);
    }

    #[test]
    fn linear_limit_matches_linear_system() {
        let d = Duffing::new(0.3, 1.7, 0.0);
        let lin = LinearSystem::homogeneous(d.linear_matrix().unwrap()).unwrap();
        let state = [0.4, -1.1];
        let a = build_coeff_table(&d, 0.0, &state, 8).unwrap();
        let b = build_coeff_table(&lin, 0.0, &state, 8).unwrap();
        for k in 0..=8 {
            for c in 0..2 {
                assert!((a.coeff(k)[c] - b.coeff(k)[c]).abs() <= 1e-15 * (1.0 + b.coeff(k)[c].abs()));
            }
        }
    }

    #[test]
    fn exact_solution_only_for_logistic_parameters() {
        assert!(Duffing::logistic().has_exact_solution());
        assert!(!Duffing::new(-3.0, 2.0, -1.0).has_exact_solution());
        let x = Duffing::logistic().exact_solution(1.0).unwrap();
        assert!((x[0] - 0.731_058_578_63).abs() < 1e-11);
    }
}
