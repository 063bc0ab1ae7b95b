use serde::{Deserialize, Serialize};

use super::{affine_update, Problem, Side};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::taylor::{CoeffSeq, CoeffTable};

/// Compartment indices in the state vector.
pub const S: usize = 0;
pub const E: usize = 1;
pub const P: usize = 2;
pub const A: usize = 3;
pub const D: usize = 4;
pub const R: usize = 5;

/// Rates of the six-compartment model, with the step change
/// `β(t) = β` for `t ≤ t_c` and `ηβ` afterwards.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeirParams {
    /// Daily transmission rate.
    pub beta: f64,
    /// Transmission reduction factor for asymptomatic carriers.
    pub mu: f64,
    /// Pre-symptomatic ratio.
    pub alpha: f64,
    /// Mean latency period (days).
    pub d1: f64,
    /// Mean pre-symptomatic infectious period (days).
    pub d2: f64,
    /// Mean asymptomatic infectious period (days).
    pub d3: f64,
    /// Mean hospitalization period (days).
    pub p: f64,
    /// Total population.
    pub n: f64,
    /// Scaling of `β` after the switch.
    pub eta: f64,
    /// Switch time (days).
    pub t_c: f64,
}

impl Default for SeirParams {
    /// COVID-19 calibration (Li et al., 2020), no transmission switch.
    fn default() -> Self {
        Self {
            beta: 1.12,
            mu: 0.55,
            alpha: 0.14,
            d1: 3.69,
            d2: 3.47,
            d3: 3.47,
            p: 1.92,
            n: 3.0e6,
            eta: 1.0,
            t_c: 66.0,
        }
    }
}

impl SeirParams {
    pub fn validate(&self) -> Result<()> {
        let periods = [self.d1, self.d2, self.d3, self.p, self.n];
        if !periods.iter().all(|v| *v > 0.0 && v.is_finite()) {
            return Err(Error::InvalidParams(
                "d1, d2, d3, p and N must be positive".into(),
            ));
        }
        if !(0.0..=1.0).contains(&self.alpha) {
            return Err(Error::InvalidParams("alpha must lie in [0, 1]".into()));
        }
        if !(self.eta >= 1.0) || !self.eta.is_finite() {
            return Err(Error::InvalidParams("eta must be at least 1".into()));
        }
        if !self.beta.is_finite() || !self.mu.is_finite() || !self.t_c.is_finite() {
            return Err(Error::InvalidParams("beta, mu and t_c must be finite".into()));
        }
        Ok(())
    }

    /// `R₀ = β[α(d₂ + p) + (1 − α)d₃]`.
    pub fn basic_reproduction_number(&self) -> f64 {
        self.beta * (self.alpha * (self.d2 + self.p) + (1.0 - self.alpha) * self.d3)
    }

    /// Transmission rate governing the interval on `side` of `t`.
    pub fn beta_at(&self, t: f64, side: Side) -> f64 {
        let switched = match side {
            Side::Forward => t >= self.t_c,
            Side::Backward => t > self.t_c,
        };
        if switched {
            self.beta * self.eta
        } else {
            self.beta
        }
    }
}

/// Susceptible / exposed / pre-symptomatic / asymptomatic / hospitalized /
/// removed epidemic model.
#[derive(Debug, Clone, PartialEq)]
pub struct Seir {
    params: SeirParams,
    linear: Matrix,
    initial: Vec<f64>,
}

impl Seir {
    pub fn new(params: SeirParams) -> Result<Self> {
        params.validate()?;
        let linear = Self::linear_part(&params);
        let mut initial = vec![0.0; 6];
        initial[S] = params.n - 1.0;
        initial[E] = 1.0;
        Ok(Self {
            params,
            linear,
            initial,
        })
    }

    pub fn params(&self) -> &SeirParams {
        &self.params
    }

    /// Starting state; must sum to `N`.
    pub fn with_initial(mut self, initial: Vec<f64>) -> Result<Self> {
        if initial.len() != 6 {
            return Err(Error::DimensionMismatch {
                expected: 6,
                found: initial.len(),
            });
        }
        let total: f64 = initial.iter().sum();
        if (total - self.params.n).abs() > 1e-9 * self.params.n {
            return Err(Error::InvalidParams(format!(
                "initial compartments sum to {total}, expected N = {}",
                self.params.n
            )));
        }
        self.initial = initial;
        Ok(self)
    }

    /// Matrix of the linear transfer terms. The removed compartment has no
    /// self-coupling, so columns sum to zero and the population is conserved.
    pub fn linear_part(params: &SeirParams) -> Matrix {
        let SeirParams {
            alpha, d1, d2, d3, p, ..
        } = *params;
        let mut a = Matrix::zeros(6, 6);
        a[(E, E)] = -1.0 / d1;
        a[(P, E)] = alpha / d1;
        a[(P, P)] = -1.0 / d2;
        a[(A, E)] = (1.0 - alpha) / d1;
        a[(A, A)] = -1.0 / d3;
        a[(D, P)] = 1.0 / d2;
        a[(D, D)] = -1.0 / p;
        a[(R, A)] = 1.0 / d3;
        a[(R, D)] = 1.0 / p;
        a
    }
}

impl Problem for Seir {
    fn name(&self) -> &str {
        "seir"
    }

    fn dim(&self) -> usize {
        6
    }

    fn next_coeff(&self, table: &CoeffTable, side: Side, out: &mut [f64]) -> Result<()> {
        let k = table.order();
        let beta = self.params.beta_at(table.base_time(), side);
        let s = table.series(S);
        let pp = table.series(P);
        let dd = table.series(D);
        let aa = table.series(A);
        let mu = self.params.mu;
        let contact: f64 = (0..=k)
            .map(|j| s.coeff(k - j) * (pp.coeff(j) + dd.coeff(j) + mu * aa.coeff(j)))
            .sum();
        let infection = beta / self.params.n * contact;
        let mut extra = [0.0; 6];
        extra[S] = -infection;
        extra[E] = infection;
        affine_update(&self.linear, table, &extra, out);
        Ok(())
    }

    fn default_initial(&self) -> Vec<f64> {
        self.initial.clone()
    }

    fn conserved_sum(&self) -> Option<f64> {
        Some(self.params.n)
    }

    fn breakpoints(&self) -> Vec<f64> {
        if self.params.eta != 1.0 && self.params.t_c > 0.0 {
            vec![self.params.t_c]
        } else {
            Vec::new()
        }
    }
}
