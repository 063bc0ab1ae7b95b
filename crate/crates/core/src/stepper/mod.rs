//! One-step advancement and the fixed / adaptive integration drivers.
//!
//! A step matches two truncated expansions at the interior point
//! `t* = t_i + (1 − θ)Δt`:
//!
//! ```text
//! Σ_{k=0}^{K} X_{i+1}(k)(−θΔt)^k = Σ_{k=0}^{K} X_i(k)((1 − θ)Δt)^k
//! ```
//!
//! `θ = 0` is the explicit local transform step; any `θ > 0` makes the left
//! side an implicit function of `X_{i+1}(0)`, solved by Newton.

mod control;
mod drive;
mod step;

pub use control::{adaptive_dt_case1, adaptive_dt_case2, Controller, StepBounds};
pub use drive::{integrate, integrate_adaptive, integrate_fixed};
pub use step::{
    build_coeff_table, build_coeff_table_on, explicit_step, implicit_residual, implicit_step,
    local_error_estimate,
};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::nonlinear::NewtonConfig;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AdaptiveConfig {
    pub tol: f64,
    pub dt_min: f64,
    /// Upper step bound; `None` means the integration length.
    pub dt_max: Option<f64>,
    pub safety: f64,
}

impl AdaptiveConfig {
    pub fn new(tol: f64) -> Self {
        Self {
            tol,
            dt_min: 1e-12,
            dt_max: None,
            safety: 0.9,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum StepMode {
    Fixed { dt: f64 },
    Adaptive(AdaptiveConfig),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SchemeConfig {
    /// Direction parameter: 0 forward, 1/2 central, 1 backward.
    pub theta: f64,
    /// Truncation order `K`.
    pub order: usize,
    pub step_mode: StepMode,
    pub newton: NewtonConfig,
}

impl SchemeConfig {
    pub fn fixed(theta: f64, order: usize, dt: f64) -> Self {
        Self {
            theta,
            order,
            step_mode: StepMode::Fixed { dt },
            newton: NewtonConfig::default(),
        }
    }

    pub fn adaptive(theta: f64, order: usize, tol: f64) -> Self {
        Self {
            theta,
            order,
            step_mode: StepMode::Adaptive(AdaptiveConfig::new(tol)),
            newton: NewtonConfig::default(),
        }
    }

    pub fn with_safety(mut self, safety: f64) -> Self {
        if let StepMode::Adaptive(ref mut a) = self.step_mode {
            a.safety = safety;
        }
        self
    }

    pub fn with_step_bounds(mut self, dt_min: f64, dt_max: Option<f64>) -> Self {
        if let StepMode::Adaptive(ref mut a) = self.step_mode {
            a.dt_min = dt_min;
            a.dt_max = dt_max;
        }
        self
    }

    pub fn with_newton(mut self, newton: NewtonConfig) -> Self {
        self.newton = newton;
        self
    }

    pub fn is_explicit(&self) -> bool {
        self.theta == 0.0
    }

    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.theta) {
            return Err(Error::InvalidConfig(format!(
                "theta must lie in [0, 1], got {}",
                self.theta
            )));
        }
        if self.order < 1 {
            return Err(Error::InvalidConfig("order K must be at least 1".into()));
        }
        match self.step_mode {
            StepMode::Fixed { dt } => {
                if !(dt > 0.0 && dt.is_finite()) {
                    return Err(Error::InvalidConfig(format!("dt must be positive, got {dt}")));
                }
            }
            StepMode::Adaptive(a) => {
                if !(a.tol > 0.0 && a.tol.is_finite()) {
                    return Err(Error::InvalidConfig(format!("tol must be positive, got {}", a.tol)));
                }
                if !(a.safety > 0.0 && a.safety <= 1.0) {
                    return Err(Error::InvalidConfig(format!(
                        "safety must lie in (0, 1], got {}",
                        a.safety
                    )));
                }
                let max_ok = a.dt_max.is_none_or(|m| m >= a.dt_min);
                if !(a.dt_min > 0.0) || !max_ok {
                    return Err(Error::InvalidConfig(
                        "step bounds must satisfy 0 < dt_min <= dt_max".into(),
                    ));
                }
                Controller::for_scheme(self.theta, self.order)?;
            }
        }
        self.newton.validate()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StepRecord {
    pub t: f64,
    pub state: Vec<f64>,
    /// Length of the step that produced this record (0 for the initial record).
    pub dt_used: f64,
    pub newton_iters: usize,
    pub local_error_estimate: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum TerminationStatus {
    Completed,
    MinStepUnderflow { t: f64, dt: f64 },
    NewtonFailure { t: f64, message: String },
    Failed { t: f64, message: String },
}

impl TerminationStatus {
    pub fn label(&self) -> &'static str {
        match self {
            Self::Completed => "completed",
            Self::MinStepUnderflow { .. } => "min-step-underflow",
            Self::NewtonFailure { .. } => "newton-failure",
            Self::Failed { .. } => "failed",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolutionTrace {
    pub problem: String,
    pub config: SchemeConfig,
    pub t_final: f64,
    pub records: Vec<StepRecord>,
    pub status: TerminationStatus,
}

impl SolutionTrace {
    /// Number of steps taken (records after the initial one).
    pub fn steps(&self) -> usize {
        self.records.len().saturating_sub(1)
    }

    pub fn is_completed(&self) -> bool {
        self.status == TerminationStatus::Completed
    }

    pub fn last(&self) -> &StepRecord {
        self.records.last().expect("trace always holds the initial record")
    }

    pub fn max_newton_iters(&self) -> usize {
        self.records.iter().map(|r| r.newton_iters).max().unwrap_or(0)
    }

    /// Largest componentwise deviation from `reference` over all nodes.
    pub fn max_abs_error<F>(&self, mut reference: F) -> f64
    where
        F: FnMut(f64) -> Vec<f64>,
    {
        self.records
            .iter()
            .map(|r| {
                let exact = reference(r.t);
                r.state
                    .iter()
                    .zip(&exact)
                    .fold(0.0, |m: f64, (a, b)| m.max((a - b).abs()))
            })
            .fold(0.0, f64::max)
    }

    /// Largest `|Σ x_i − total|` over all nodes.
    pub fn max_sum_drift(&self, total: f64) -> f64 {
        self.records
            .iter()
            .map(|r| (r.state.iter().sum::<f64>() - total).abs())
            .fold(0.0, f64::max)
    }
}
