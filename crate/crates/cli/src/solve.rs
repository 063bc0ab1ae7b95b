use std::io::Write;
use std::time::Instant;

use anyhow::Result;
use ieldtm::stepper::{integrate_adaptive, integrate_fixed, SchemeConfig};
use ieldtm::{SolutionTrace, StepMode};
use serde::Serialize;

use crate::args::{SchemeArgs, SolveArgs};
use crate::oracle::ReferenceOracle;
use crate::output::{sink, write_trace};
use crate::problem;

#[derive(Debug, Serialize)]
pub struct Summary {
    pub problem: String,
    pub theta: f64,
    #[serde(rename = "K")]
    pub order: usize,
    pub mode: String,
    pub steps: usize,
    pub max_error: Option<f64>,
    pub oracle: String,
    pub oracle_error_estimate: Option<f64>,
    pub wall_ms: f64,
    pub status: String,
    pub status_detail: Option<String>,
    pub t_final: f64,
    pub final_time: f64,
    pub final_state: Vec<f64>,
    pub max_newton_iters: usize,
    pub conserved_sum_drift: Option<f64>,
}

/// Builds and validates the scheme; `--dt` selects fixed steps, `--tol`
/// (default 1e-8) adaptive ones.
pub fn scheme_config(args: &SchemeArgs) -> Result<SchemeConfig> {
    let config = match (args.dt, args.tol) {
        (Some(dt), _) => SchemeConfig::fixed(args.theta, args.order, dt),
        (None, tol) => SchemeConfig::adaptive(args.theta, args.order, tol.unwrap_or(1e-8))
            .with_safety(args.safety)
            .with_step_bounds(args.dt_min, args.dt_max),
    };
    config.validate()?;
    Ok(config)
}

pub fn mode_label(config: &SchemeConfig) -> String {
    match config.step_mode {
        StepMode::Fixed { dt } => format!("fixed dt={dt}"),
        StepMode::Adaptive(a) => format!("adaptive tol={:e}", a.tol),
    }
}

pub fn run_trace(problem: &dyn ieldtm::Problem, config: &SchemeConfig, t_final: f64) -> Result<SolutionTrace> {
    Ok(match config.step_mode {
        StepMode::Fixed { .. } => integrate_fixed(problem, config, t_final)?,
        StepMode::Adaptive(_) => integrate_adaptive(problem, config, t_final)?,
    })
}

/// Returns whether the integration completed.
pub fn run(args: &SolveArgs) -> Result<bool> {
    let problem = problem::build(&args.problem)?;
    let config = scheme_config(&args.scheme)?;
    let t_final = args.tf.unwrap_or_else(|| problem::default_final_time(&args.problem));

    let start = Instant::now();
    let trace = run_trace(problem.as_ref(), &config, t_final)?;
    let wall_ms = start.elapsed().as_secs_f64() * 1e3;

    let oracle = ReferenceOracle::for_trace(problem.as_ref(), args.oracle, &trace)?;
    let description = oracle.description();
    if let Some(path) = &args.output.out {
        let mut out = sink(Some(path))?;
        write_trace(&trace, args.output.format, &description, &mut out)?;
        out.flush()?;
    }

    let last = trace.last();
    let detail = match &trace.status {
        ieldtm::TerminationStatus::Completed => None,
        other => Some(serde_json::to_string(other)?),
    };
    let summary = Summary {
        problem: trace.problem.clone(),
        theta: config.theta,
        order: config.order,
        mode: mode_label(&config),
        steps: trace.steps(),
        max_error: oracle.max_error(problem.as_ref(), &trace),
        oracle: description,
        oracle_error_estimate: oracle.self_error(),
        wall_ms,
        status: trace.status.label().to_string(),
        status_detail: detail,
        t_final,
        final_time: last.t,
        final_state: last.state.clone(),
        max_newton_iters: trace.max_newton_iters(),
        conserved_sum_drift: problem.conserved_sum().map(|n| trace.max_sum_drift(n)),
    };
    let mut stdout = sink(None)?;
    serde_json::to_writer_pretty(&mut stdout, &summary)?;
    writeln!(stdout)?;
    stdout.flush()?;
    Ok(trace.is_completed())
}
