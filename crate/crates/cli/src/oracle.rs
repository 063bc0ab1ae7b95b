//! Reference solutions for error measurement.

use anyhow::{bail, Result};
use ieldtm::problems::Problem;
use ieldtm::stepper::{integrate, SchemeConfig};
use ieldtm::{SolutionTrace, StepMode};

use crate::args::OracleChoice;

pub enum ReferenceOracle {
    Exact,
    /// Central scheme at order `K + 4` and tolerance `tol / 10⁴`, run through
    /// every node of the trace under test.
    Refined {
        description: String,
        states: Vec<Vec<f64>>,
        /// Largest deviation from a second run at twice the tolerance.
        self_error: f64,
    },
    Unavailable(String),
}

impl ReferenceOracle {
    pub fn for_trace(problem: &dyn Problem, choice: OracleChoice, trace: &SolutionTrace) -> Result<Self> {
        match choice {
            OracleChoice::None => Ok(Self::Unavailable("none".into())),
            OracleChoice::Exact if !problem.has_exact_solution() => {
                bail!("{} has no closed-form solution", problem.name())
            }
            OracleChoice::Exact => Ok(Self::Exact),
            OracleChoice::Auto if problem.has_exact_solution() => Ok(Self::Exact),
            OracleChoice::Auto | OracleChoice::Refined => Ok(Self::refined(problem, trace)),
        }
    }

    fn refined(problem: &dyn Problem, trace: &SolutionTrace) -> Self {
        let base_tol = match trace.config.step_mode {
            StepMode::Adaptive(a) => a.tol,
            StepMode::Fixed { .. } => 1e-8,
        };
        let scale = problem.default_initial().iter().fold(1.0f64, |m, v| m.max(v.abs()));
        let tol = (base_tol * 1e-4).max(1e-14 * scale);
        let order = trace.config.order + 4;
        let stops: Vec<f64> = trace.records.iter().map(|r| r.t).collect();
        let t_final = trace.last().t;
        let description = format!("refined: theta=0.5 K={order} tol={tol:e}");
        if t_final <= 0.0 {
            return Self::Refined {
                description,
                states: vec![trace.records[0].state.clone()],
                self_error: 0.0,
            };
        }

        let run = |tol: f64| {
            let config = SchemeConfig::adaptive(0.5, order, tol);
            integrate(problem, &config, &problem.default_initial(), t_final, &stops)
        };
        let complete = |tol: f64| match run(tol) {
            Ok(t) if t.is_completed() => Ok(t),
            Ok(t) => Err(format!("{description} ({})", t.status.label())),
            Err(e) => Err(format!("{description} ({e})")),
        };
        let (fine, coarse) = match (complete(tol), complete(2.0 * tol)) {
            (Ok(f), Ok(c)) => (f, c),
            (Err(why), _) | (_, Err(why)) => return Self::Unavailable(why),
        };
        let fine = states_at(&fine, &stops);
        let coarse = states_at(&coarse, &stops);
        let self_error = fine
            .iter()
            .zip(&coarse)
            .flat_map(|(a, b)| a.iter().zip(b).map(|(x, y)| (x - y).abs()))
            .fold(0.0, f64::max);
        Self::Refined {
            description,
            states: fine,
            self_error,
        }
    }

    pub fn description(&self) -> String {
        match self {
            Self::Exact => "exact".into(),
            Self::Refined { description, .. } => description.clone(),
            Self::Unavailable(why) => why.clone(),
        }
    }

    pub fn self_error(&self) -> Option<f64> {
        match self {
            Self::Refined { self_error, .. } => Some(*self_error),
            _ => None,
        }
    }

    /// Largest componentwise deviation of `trace` from the reference.
    pub fn max_error(&self, problem: &dyn Problem, trace: &SolutionTrace) -> Option<f64> {
        match self {
            Self::Exact => Some(trace.max_abs_error(|t| problem.exact_solution(t).expect("closed form"))),
            Self::Refined { states, .. } => Some(
                trace
                    .records
                    .iter()
                    .zip(states)
                    .flat_map(|(r, s)| r.state.iter().zip(s).map(|(x, y)| (x - y).abs()))
                    .fold(0.0, f64::max),
            ),
            Self::Unavailable(_) => None,
        }
    }
}

/// States of `reference` at each time in `times`; every time is a node of it.
fn states_at(reference: &SolutionTrace, times: &[f64]) -> Vec<Vec<f64>> {
    let mut out = Vec::with_capacity(times.len());
    let mut cursor = 0;
    for &t in times {
        while cursor + 1 < reference.records.len() && reference.records[cursor].t < t {
            cursor += 1;
        }
        out.push(reference.records[cursor].state.clone());
    }
    out
}
