//! ODE systems expressed as coefficient recurrences `X(k+1) = F(X(0..=k), t_i) / (k+1)`.
//!
//! Every problem is hand-transformed: the recurrence is written in terms of
//! Cauchy products of the component series, so the integrator never needs to
//! differentiate a closed-form right-hand side.

mod dahlquist;
mod duffing;
mod linear;
mod robertson;
mod seir;
mod van_der_pol;

pub use dahlquist::Dahlquist;
pub use duffing::Duffing;
pub use linear::{ForcingFn, LinearSystem};
pub use robertson::Robertson;
pub use seir::{Seir, SeirParams};
pub use van_der_pol::VanDerPol;

use crate::error::Result;
use crate::matrix::Matrix;
use crate::taylor::CoeffTable;

/// Which neighbouring interval an expansion describes.
///
/// Only problems with piecewise-constant parameters care: at a switch time
/// the forward expansion uses the parameters after the switch, the backward
/// one those before it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Side {
    #[default]
    Forward,
    Backward,
}

/// An initial value problem in transformed form.
pub trait Problem: Send + Sync {
    fn name(&self) -> &str;

    fn dim(&self) -> usize;

    /// Writes `X(k+1)` into `out`, where `k = table.order()`.
    ///
    /// The expansion point is `table.base_time()`. `out` has length `dim()`
    /// and must be fully overwritten.
    fn next_coeff(&self, table: &CoeffTable, side: Side, out: &mut [f64]) -> Result<()>;

    fn default_initial(&self) -> Vec<f64>;

    /// Closed-form solution starting from [`Problem::default_initial`], when known.
    fn exact_solution(&self, _t: f64) -> Option<Vec<f64>> {
        None
    }

    fn has_exact_solution(&self) -> bool {
        self.exact_solution(0.0).is_some()
    }

    /// `A` when the right-hand side is `A·x + B(t)`.
    fn linear_matrix(&self) -> Option<Matrix> {
        None
    }

    /// Value that the sum of all components keeps for all time, if any.
    fn conserved_sum(&self) -> Option<f64> {
        None
    }

    /// Times where the right-hand side is discontinuous; integrators place a node there.
    fn breakpoints(&self) -> Vec<f64> {
        Vec::new()
    }
}

pub type RecurrenceFn = dyn Fn(&CoeffTable, Side, &mut [f64]) -> Result<()> + Send + Sync;
pub type ExactFn = dyn Fn(f64) -> Vec<f64> + Send + Sync;

/// A user-supplied problem built from closures.
///
/// ```
/// use ieldtm::problems::{Problem, ProblemDefinition};
///
/// // x' = -x²  →  X(k+1) = -(X*X)(k) / (k+1)
/// let p = ProblemDefinition::new("riccati", vec![1.0], |table, _side, out| {
///     let k = table.order();
///     let s = table.series(0);
///     out[0] = -ieldtm::taylor::cauchy_product(&s, &s, k)? / (k + 1) as f64;
///     Ok(())
/// })
/// .with_exact(|t| vec![1.0 / (1.0 + t)]);
/// assert_eq!(p.dim(), 1);
/// ```
pub struct ProblemDefinition {
    name: String,
    initial: Vec<f64>,
    recurrence: Box<RecurrenceFn>,
    exact: Option<Box<ExactFn>>,
    linear_matrix: Option<Matrix>,
    conserved_sum: Option<f64>,
    breakpoints: Vec<f64>,
}

impl ProblemDefinition {
    pub fn new<F>(name: impl Into<String>, initial: Vec<f64>, recurrence: F) -> Self
    where
        F: Fn(&CoeffTable, Side, &mut [f64]) -> Result<()> + Send + Sync + 'static,
    {
        Self {
            name: name.into(),
            initial,
            recurrence: Box::new(recurrence),
            exact: None,
            linear_matrix: None,
            conserved_sum: None,
            breakpoints: Vec::new(),
        }
    }

    pub fn with_exact<F>(mut self, exact: F) -> Self
    where
        F: Fn(f64) -> Vec<f64> + Send + Sync + 'static,
    {
        self.exact = Some(Box::new(exact));
        self
    }

    pub fn with_linear_matrix(mut self, a: Matrix) -> Self {
        self.linear_matrix = Some(a);
        self
    }

    pub fn with_conserved_sum(mut self, total: f64) -> Self {
        self.conserved_sum = Some(total);
        self
    }

    pub fn with_breakpoints(mut self, times: Vec<f64>) -> Self {
        self.breakpoints = times;
        self
    }
}

impl std::fmt::Debug for ProblemDefinition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ProblemDefinition")
            .field("name", &self.name)
            .field("dim", &self.initial.len())
            .field("has_exact", &self.exact.is_some())
            .finish_non_exhaustive()
    }
}

impl Problem for ProblemDefinition {
    fn name(&self) -> &str {
        &self.name
    }

    fn dim(&self) -> usize {
        self.initial.len()
    }

    fn next_coeff(&self, table: &CoeffTable, side: Side, out: &mut [f64]) -> Result<()> {
        (self.recurrence)(table, side, out)
    }

    fn default_initial(&self) -> Vec<f64> {
        self.initial.clone()
    }

    fn exact_solution(&self, t: f64) -> Option<Vec<f64>> {
        self.exact.as_ref().map(|f| f(t))
    }

    fn linear_matrix(&self) -> Option<Matrix> {
        self.linear_matrix.clone()
    }

    fn conserved_sum(&self) -> Option<f64> {
        self.conserved_sum
    }

    fn breakpoints(&self) -> Vec<f64> {
        self.breakpoints.clone()
    }
}

/// Shared helper for the `(A·X(k) + B(k)) / (k+1)` shape most problems take.
pub(crate) fn affine_update(a: &Matrix, table: &CoeffTable, extra: &[f64], out: &mut [f64]) {
    let k = table.order();
    out.copy_from_slice(extra);
    a.mul_vec_add_into(table.coeff(k), out);
    let inv = 1.0 / (k + 1) as f64;
    out.iter_mut().for_each(|v| *v *= inv);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::taylor::cauchy_product;

    #[test]
    fn custom_problem_recurrence() {
        let p = ProblemDefinition::new("riccati", vec![1.0], |table, _side, out| {
            let k = table.order();
            let s = table.series(0);
            out[0] = -cauchy_product(&s, &s, k)? / (k + 1) as f64;
            Ok(())
        })
        .with_exact(|t| vec![1.0 / (1.0 + t)])
        .with_conserved_sum(1.0)
        .with_breakpoints(vec![0.5]);
        // 1/(1+t) = 1 - t + t² - ...
        let mut table = CoeffTable::new(0.0, &[1.0]).unwrap();
        let mut out = [0.0];
        for k in 0..5 {
            p.next_coeff(&table, Side::Forward, &mut out).unwrap();
            let expected = if k % 2 == 0 { -1.0 } else { 1.0 };
            assert!((out[0] - expected).abs() < 1e-14);
            table.push(&out).unwrap();
        }
        assert!(p.has_exact_solution());
        assert_eq!(p.conserved_sum(), Some(1.0));
        assert_eq!(p.breakpoints(), vec![0.5]);
        assert!(p.linear_matrix().is_none());
    }
}
