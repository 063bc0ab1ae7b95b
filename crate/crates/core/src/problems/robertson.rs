use super::{Problem, Side};
use crate::error::Result;
use crate::taylor::{cauchy_product, CoeffTable};

const K1: f64 = 0.04;
const K2: f64 = 1e4;
const K3: f64 = 3e7;

/// Robertson kinetics with `e^{−t}` forcing so that
/// `(e^{−t}, 0, 1 − e^{−t})` is the exact solution.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Robertson;

impl Robertson {
    pub fn new() -> Self {
        Self
    }
}

impl Problem for Robertson {
    fn name(&self) -> &str {
        "robertson"
    }

    fn dim(&self) -> usize {
        3
    }

    fn next_coeff(&self, table: &CoeffTable, _side: Side, out: &mut [f64]) -> Result<()> {
        let k = table.order();
        let x1 = table.coeff(k)[0];
        let s2 = table.series(1);
        let s3 = table.series(2);
        let x2x3 = cauchy_product(&s2, &s3, k)?;
        let x2x2 = cauchy_product(&s2, &s2, k)?;
        // Coefficient k of e^{-t} about t_i: e^{-t_i} (-1)^k / k!
        let inv_fact: f64 = (1..=k).fold(1.0, |acc, j| acc / j as f64);
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let forcing = (-table.base_time()).exp() * sign * inv_fact;
        let inv = 1.0 / (k + 1) as f64;
        out[0] = (-K1 * x1 + K2 * x2x3 - 0.96 * forcing) * inv;
        out[1] = (K1 * x1 - K2 * x2x3 - K3 * x2x2 - 0.04 * forcing) * inv;
        out[2] = (K3 * x2x2 + forcing) * inv;
        Ok(())
    }

    fn default_initial(&self) -> Vec<f64> {
        vec![1.0, 0.0, 0.0]
    }

    fn exact_solution(&self, t: f64) -> Option<Vec<f64>> {
        let e = (-t).exp();
        Some(vec![e, 0.0, 1.0 - e])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stepper::build_coeff_table;

    #[test]
    fn first_coefficient_from_exact_data() {
        let t = build_coeff_table(&Robertson, 0.0, &[1.0, 0.0, 0.0], 1).unwrap();
        assert_eq!(t.coeff(1), &[-1.0, 0.0, 1.0]);
    }

    #[test]
    fn middle_component_stays_zero() {
        for &ti in &[0.0, 0.7, 2.5] {
            let x = Robertson.exact_solution(ti).unwrap();
            let t = build_coeff_table(&Robertson, ti, &x, 6).unwrap();
            for k in 0..=6 {
                // Round-off in the first component is amplified by the fast rate constants.
                assert!(t.coeff(k)[1].abs() < 1e-12, "t={ti} k={k} {}", t.coeff(k)[1]);
            }
        }
    }

    #[test]
    fn exact_value_at_four() {
        let x = Robertson.exact_solution(4.0).unwrap();
        assert!((x[0] - 0.018_315_638_89).abs() < 1e-11);
    }
}
