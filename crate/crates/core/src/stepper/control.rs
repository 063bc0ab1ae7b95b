use crate::error::{Error, Result};
use crate::taylor::CoeffTable;

/// Step-size rule picked from the scheme.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Controller {
    /// `Δt = (tol / ‖X(K+1)‖)^{1/K}`: forward and backward schemes, and the
    /// central scheme with even `K`.
    LeadingTerm,
    /// `Δt = (tol / ‖(1/2)^{K+1}(K+1)·X(K+2)‖)^{1/(K+1)}`: central scheme, odd `K`.
    CentralOdd,
}

impl Controller {
    pub fn for_scheme(theta: f64, order: usize) -> Result<Self> {
        if theta == 0.5 {
            Ok(if order % 2 == 1 {
                Self::CentralOdd
            } else {
                Self::LeadingTerm
            })
        } else if theta == 0.0 || theta == 1.0 {
            Ok(Self::LeadingTerm)
        } else {
            Err(Error::InvalidConfig(format!(
                "adaptive stepping is defined for theta in {{0, 0.5, 1}}, got {theta}"
            )))
        }
    }

    /// Coefficient index the rule reads.
    pub fn required_depth(&self, order: usize) -> usize {
        match self {
            Self::LeadingTerm => order + 1,
            Self::CentralOdd => order + 2,
        }
    }

    /// Unclamped step; infinite when the governing coefficient vanishes.
    pub fn raw_step(&self, table: &CoeffTable, order: usize, tol: f64, safety: f64) -> Result<f64> {
        let depth = self.required_depth(order);
        if table.order() < depth {
            return Err(Error::IndexOutOfRange {
                index: depth,
                len: table.len(),
            });
        }
        let (norm, exponent) = match self {
            Self::LeadingTerm => (table.max_norm(depth), order),
            Self::CentralOdd => {
                let c = 0.5f64.powi(order as i32 + 1) * (order + 1) as f64;
                (c * table.max_norm(depth), order + 1)
            }
        };
        if norm == 0.0 {
            return Ok(f64::INFINITY);
        }
        Ok(safety * (tol / norm).powf(1.0 / exponent as f64))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepBounds {
    pub min: f64,
    pub max: f64,
}

impl StepBounds {
    pub fn new(min: f64, max: f64) -> Self {
        Self { min, max }
    }

    pub fn clamp(&self, dt: f64) -> f64 {
        dt.clamp(self.min, self.max)
    }
}

/// Step from the leading truncation coefficient `X(K+1)`, ∞-norm.
pub fn adaptive_dt_case1(
    table: &CoeffTable,
    order: usize,
    tol: f64,
    safety: f64,
    bounds: StepBounds,
) -> Result<f64> {
    let raw = Controller::LeadingTerm.raw_step(table, order, tol, safety)?;
    Ok(bounds.clamp(raw))
}

/// Step for the central scheme with odd `K`, from `X(K+2)`.
pub fn adaptive_dt_case2(
    table: &CoeffTable,
    order: usize,
    tol: f64,
    safety: f64,
    bounds: StepBounds,
) -> Result<f64> {
    if order % 2 == 0 {
        return Err(Error::InvalidConfig(format!(
            "the central odd-order controller needs odd K, got {order}"
        )));
    }
    let raw = Controller::CentralOdd.raw_step(table, order, tol, safety)?;
    Ok(bounds.clamp(raw))
}

#[cfg(test)]
mod tests {
    use super::*;

    const WIDE: StepBounds = StepBounds {
        min: 1e-300,
        max: 1e300,
    };

    fn table_with(index: usize, value: f64) -> CoeffTable {
        let rows: Vec<[f64; 2]> = (0..=index)
            .map(|k| if k == index { [value, -0.5 * value] } else { [1.0, 1.0] })
            .collect();
        CoeffTable::from_coeffs(0.0, &rows).unwrap()
    }

    #[test]
    fn case1_direct_evaluation() {
        let dt = adaptive_dt_case1(&table_with(4, -1.0), 3, 1e-6, 1.0, WIDE).unwrap();
        assert!((dt - 0.01).abs() < 1e-15);
    }

    #[test]
    fn case1_zero_coefficient_gives_max() {
        let dt = adaptive_dt_case1(&table_with(4, 0.0), 3, 1e-6, 1.0, StepBounds::new(1e-9, 2.5)).unwrap();
        assert_eq!(dt, 2.5);
    }

    #[test]
    fn case1_tolerance_scaling() {
        let t = table_with(6, 3.7);
        let a = adaptive_dt_case1(&t, 5, 1e-8, 0.9, WIDE).unwrap();
        let b = adaptive_dt_case1(&t, 5, 2e-8, 0.9, WIDE).unwrap();
        assert!((b / a - 2f64.powf(0.2)).abs() < 1e-14);
    }

    #[test]
    fn case2_direct_evaluation() {
        let dt = adaptive_dt_case2(&table_with(5, 1.0), 3, 1e-8, 1.0, WIDE).unwrap();
        assert!((dt - 4e-8f64.powf(0.25)).abs() < 1e-15);
        assert!((dt - 0.014_142).abs() < 1e-5);
    }

    #[test]
    fn case2_rejects_even_order() {
        assert!(matches!(
            adaptive_dt_case2(&table_with(6, 1.0), 4, 1e-8, 1.0, WIDE),
            Err(Error::InvalidConfig(_))
        ));
    }

    #[test]
    fn case2_tolerance_scaling() {
        let t = table_with(7, 0.3);
        let a = adaptive_dt_case2(&t, 5, 1e-10, 0.9, WIDE).unwrap();
        let b = adaptive_dt_case2(&t, 5, 0.5e-10, 0.9, WIDE).unwrap();
        assert!((b / a - 0.5f64.powf(1.0 / 6.0)).abs() < 1e-14);
    }

    #[test]
    fn clamping_and_shallow_tables() {
        let dt = adaptive_dt_case1(&table_with(4, 1e-30), 3, 1e-6, 1.0, StepBounds::new(1e-6, 0.1)).unwrap();
        assert_eq!(dt, 0.1);
        let dt = adaptive_dt_case1(&table_with(4, 1e30), 3, 1e-6, 1.0, StepBounds::new(1e-6, 0.1)).unwrap();
        assert_eq!(dt, 1e-6);
        assert!(adaptive_dt_case2(&table_with(4, 1.0), 3, 1e-6, 1.0, WIDE).is_err());
    }

    #[test]
    fn controller_selection() {
        assert_eq!(Controller::for_scheme(0.5, 3).unwrap(), Controller::CentralOdd);
        assert_eq!(Controller::for_scheme(0.5, 4).unwrap(), Controller::LeadingTerm);
        assert_eq!(Controller::for_scheme(0.0, 3).unwrap(), Controller::LeadingTerm);
        assert_eq!(Controller::for_scheme(1.0, 5).unwrap(), Controller::LeadingTerm);
        assert!(Controller::for_scheme(0.25, 3).is_err());
    }
}
