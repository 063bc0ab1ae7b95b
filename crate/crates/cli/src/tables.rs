//! Sweeps and the published-table reproductions.

use std::time::Instant;

use anyhow::{bail, Result};
use ieldtm::problems::{Duffing, Problem, Robertson, Seir, SeirParams, VanDerPol};
use ieldtm::stability::scheme_order;
use ieldtm::stepper::SchemeConfig;
use rayon::prelude::*;
use serde::Serialize;

use crate::args::{OrderSweepArgs, OutputArgs, ProblemName, SeirSweepArgs, StepCountArgs, TableArgs};
use crate::output::{sink, write_rows};
use crate::paper;
use crate::problem;
use crate::solve::run_trace;

fn emit<T: Serialize>(rows: &[T], output: &OutputArgs) -> Result<()> {
    let mut out = sink(output.out.as_deref())?;
    write_rows(rows, output.format, &mut out)
}

fn verdict(pass: bool, line: &str) -> bool {
    eprintln!("{} {line}", if pass { "PASS" } else { "FAIL" });
    pass
}

/// Runs a cell and returns (steps, max error vs exact, max Newton, status).
fn measure(problem: &dyn Problem, config: &SchemeConfig, t_final: f64) -> Result<Cell> {
    let start = Instant::now();
    let trace = run_trace(problem, config, t_final)?;
    let wall_ms = start.elapsed().as_secs_f64() * 1e3;
    let max_error = problem
        .has_exact_solution()
        .then(|| trace.max_abs_error(|t| problem.exact_solution(t).expect("closed form")));
    Ok(Cell {
        steps: trace.steps(),
        max_error,
        max_newton_iters: trace.max_newton_iters(),
        status: trace.status.label().to_string(),
        sum_drift: problem.conserved_sum().map(|n| trace.max_sum_drift(n)),
        wall_ms,
    })
}

struct Cell {
    steps: usize,
    max_error: Option<f64>,
    max_newton_iters: usize,
    status: String,
    sum_drift: Option<f64>,
    wall_ms: f64,
}

impl Cell {
    fn completed(&self) -> bool {
        self.status == "completed"
    }
}

// ---------------------------------------------------------------- orders

#[derive(Debug, Clone, Serialize)]
pub struct OrderRow {
    pub theta: f64,
    #[serde(rename = "K")]
    pub order: usize,
    pub dt: f64,
    pub error_dt: Option<f64>,
    pub error_half_dt: Option<f64>,
    pub observed: Option<f64>,
    pub theory: usize,
    pub paper: Option<f64>,
    pub pass: Option<bool>,
    pub status: String,
}

pub fn order_rows(problem: &dyn Problem, dt: f64, t_final: f64, max_k: usize) -> Vec<OrderRow> {
    let cells: Vec<(f64, usize)> = [0.0, 0.5, 1.0]
        .into_iter()
        .flat_map(|theta| (1..=max_k).map(move |k| (theta, k)))
        .collect();
    cells
        .par_iter()
        .map(|&(theta, k)| {
            let errs: Vec<Result<Cell>> = [dt, dt / 2.0]
                .iter()
                .map(|&h| measure(problem, &SchemeConfig::fixed(theta, k, h), t_final))
                .collect();
            let status = match (&errs[0], &errs[1]) {
                (Ok(a), Ok(b)) if a.completed() && b.completed() => "completed".to_string(),
                (Ok(a), Ok(b)) => format!("{}/{}", a.status, b.status),
                (Err(e), _) | (_, Err(e)) => e.to_string(),
            };
            let err = |i: usize| errs[i].as_ref().ok().filter(|c| c.completed()).and_then(|c| c.max_error);
            let (e1, e2) = (err(0), err(1));
            OrderRow {
                theta,
                order: k,
                dt,
                error_dt: e1,
                error_half_dt: e2,
                observed: e1.zip(e2).map(|(a, b)| (a / b).log2()),
                theory: scheme_order(theta, k),
                paper: None,
                pass: None,
                status,
            }
        })
        .collect()
}

pub fn order_sweep(args: &OrderSweepArgs) -> Result<bool> {
    let problem = problem::build(&args.problem)?;
    if !problem.has_exact_solution() {
        bail!("order-sweep needs a problem with a closed-form solution; {} has none", problem.name());
    }
    let t_final = args.tf.unwrap_or_else(|| problem::default_final_time(&args.problem));
    let rows = order_rows(problem.as_ref(), args.dt, t_final, args.max_k);
    emit(&rows, &args.output)?;
    Ok(true)
}

pub fn table2(args: &TableArgs) -> Result<bool> {
    let mut rows = order_rows(&Duffing::logistic(), 0.05, 1.0, 6);
    for row in &mut rows {
        let col = if row.theta == 0.0 { 0 } else if row.theta == 0.5 { 1 } else { 2 };
        row.paper = Some(paper::TABLE2_ORDERS[row.order - 1][col]);
        row.pass = Some(
            row.observed
                .is_some_and(|o| (o - row.theory as f64).abs() <= paper::ORDER_SLACK),
        );
    }
    emit(&rows, &args.output)?;
    if !args.check {
        return Ok(true);
    }
    let mut ok = true;
    for r in &rows {
        ok &= verdict(
            r.pass == Some(true),
            &format!(
                "theta={} K={}: observed {} vs theory {} (paper {:.4})",
                r.theta,
                r.order,
                r.observed.map_or("n/a".into(), |o| format!("{o:.4}")),
                r.theory,
                r.paper.unwrap_or(f64::NAN)
            ),
        );
    }
    Ok(ok)
}

// ---------------------------------------------------------------- table 3

#[derive(Debug, Clone, Serialize)]
pub struct AdaptiveRow {
    pub t_final: f64,
    #[serde(rename = "K")]
    pub order: usize,
    pub steps: usize,
    pub max_error: Option<f64>,
    pub paper_steps: usize,
    pub paper_error: f64,
    pub status: String,
    pub pass: bool,
}

fn steps_within(steps: usize, paper: usize) -> bool {
    let ratio = steps as f64 / paper as f64;
    (1.0 / paper::STEP_FACTOR..=paper::STEP_FACTOR).contains(&ratio)
}

fn error_within(err: Option<f64>, paper: f64) -> bool {
    err.is_some_and(|e| e <= (paper::ERROR_FACTOR * paper).max(paper::ROUND_OFF_FLOOR))
}

pub fn table3(args: &TableArgs) -> Result<bool> {
    let problem = Duffing::logistic();
    let rows: Vec<AdaptiveRow> = paper::TABLE3
        .par_iter()
        .map(|&(t_final, k, paper_steps, paper_error)| {
            let cell = measure(&problem, &SchemeConfig::adaptive(0.5, k, 1e-10), t_final)?;
            Ok(AdaptiveRow {
                t_final,
                order: k,
                steps: cell.steps,
                max_error: cell.max_error,
                paper_steps,
                paper_error,
                pass: cell.completed() && steps_within(cell.steps, paper_steps) && error_within(cell.max_error, paper_error),
                status: cell.status,
            })
        })
        .collect::<Result<_>>()?;
    emit(&rows, &args.output)?;
    if !args.check {
        return Ok(true);
    }
    let mut ok = true;
    for r in &rows {
        ok &= verdict(
            r.pass,
            &format!(
                "t_f={} K={}: {} steps (paper {}), error {:.3e} (paper {:.2e})",
                r.t_final,
                r.order,
                r.steps,
                r.paper_steps,
                r.max_error.unwrap_or(f64::NAN),
                r.paper_error
            ),
        );
    }
    Ok(ok)
}

// ---------------------------------------------------------------- table 4

#[derive(Debug, Clone, Serialize)]
pub struct FixedErrorRow {
    pub dt: f64,
    #[serde(rename = "K")]
    pub order: usize,
    pub max_error: Option<f64>,
    pub paper_error: f64,
    pub status: String,
    pub pass: bool,
}

pub fn table4(args: &TableArgs) -> Result<bool> {
    let problem = Robertson::new();
    let cells: Vec<(i32, usize, f64)> = paper::TABLE4
        .iter()
        .flat_map(|&(p, errs)| (0..3).map(move |j| (p, 3 + j, errs[j])))
        .collect();
    let rows: Vec<FixedErrorRow> = cells
        .par_iter()
        .map(|&(p, k, paper_error)| {
            let dt = 2f64.powi(-p);
            let cell = measure(&problem, &SchemeConfig::fixed(0.5, k, dt), 4.0)?;
            Ok(FixedErrorRow {
                dt,
                order: k,
                max_error: cell.max_error,
                paper_error,
                pass: cell.completed() && error_within(cell.max_error, paper_error),
                status: cell.status,
            })
        })
        .collect::<Result<_>>()?;
    emit(&rows, &args.output)?;
    if !args.check {
        return Ok(true);
    }
    let mut ok = true;
    for r in &rows {
        ok &= verdict(
            r.pass,
            &format!(
                "dt={} K={}: {:.3e} (paper {:.2e})",
                r.dt,
                r.order,
                r.max_error.unwrap_or(f64::NAN),
                r.paper_error
            ),
        );
    }
    Ok(ok)
}

// ---------------------------------------------------------------- step counts

#[derive(Debug, Clone, Serialize)]
pub struct StepRow {
    pub problem: String,
    /// ε for Van der Pol, η for SEIR.
    pub parameter: f64,
    pub t_final: f64,
    #[serde(rename = "K")]
    pub order: usize,
    pub steps: usize,
    pub max_newton_iters: usize,
    pub sum_drift: Option<f64>,
    pub wall_ms: f64,
    pub status: String,
    pub paper_steps: Option<usize>,
    pub pass: Option<bool>,
}

fn step_rows<F>(cells: &[(f64, f64, usize)], theta: f64, tol: f64, build: F) -> Result<Vec<StepRow>>
where
    F: Fn(f64) -> Result<Box<dyn Problem>> + Sync,
{
    cells
        .par_iter()
        .map(|&(parameter, t_final, k)| {
            let problem = build(parameter)?;
            let cell = measure(problem.as_ref(), &SchemeConfig::adaptive(theta, k, tol), t_final)?;
            Ok(StepRow {
                problem: problem.name().to_string(),
                parameter,
                t_final,
                order: k,
                steps: cell.steps,
                max_newton_iters: cell.max_newton_iters,
                sum_drift: cell.sum_drift,
                wall_ms: cell.wall_ms,
                status: cell.status,
                paper_steps: None,
                pass: None,
            })
        })
        .collect()
}

fn van_der_pol(epsilon: f64) -> Result<Box<dyn Problem>> {
    Ok(Box::new(VanDerPol::new(epsilon)))
}

fn seir_with(t_c: f64) -> impl Fn(f64) -> Result<Box<dyn Problem>> + Sync {
    move |eta| {
        let params = SeirParams {
            eta,
            t_c,
            ..SeirParams::default()
        };
        Ok(Box::new(Seir::new(params)?) as Box<dyn Problem>)
    }
}

const SEIR_ETAS: [f64; 12] = [1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0, 9.0, 10.0, 11.0, 12.0];

pub fn step_count(args: &StepCountArgs) -> Result<bool> {
    let rows = match args.problem {
        ProblemName::VanDerPol => {
            let orders = if args.orders.is_empty() { paper::TABLE5_ORDERS.to_vec() } else { args.orders.clone() };
            let grid: Vec<(f64, f64)> = match args.epsilon {
                Some(eps) => vec![(eps, args.tf.unwrap_or((10.0 * eps).max(1.0)))],
                None => paper::TABLE5.iter().map(|&(e, t, _)| (e, t)).collect(),
            };
            let cells: Vec<(f64, f64, usize)> = grid
                .iter()
                .flat_map(|&(e, t)| orders.iter().map(move |&k| (e, t, k)))
                .collect();
            step_rows(&cells, args.theta, args.tol.unwrap_or(1e-10), van_der_pol)?
        }
        ProblemName::Seir => {
            let orders = if args.orders.is_empty() { vec![6, 8] } else { args.orders.clone() };
            let t_final = args.tf.unwrap_or(200.0);
            let cells: Vec<(f64, f64, usize)> = orders
                .iter()
                .flat_map(|&k| SEIR_ETAS.iter().map(move |&eta| (eta, t_final, k)))
                .collect();
            step_rows(&cells, args.theta, args.tol.unwrap_or(1e-5), seir_with(args.tc.unwrap_or(66.0)))?
        }
        other => bail!("step-count supports van-der-pol and seir, not {other:?}"),
    };
    emit(&rows, &args.output)?;
    Ok(rows.iter().all(|r| r.status == "completed"))
}

pub fn table5(args: &TableArgs) -> Result<bool> {
    let cells: Vec<(f64, f64, usize)> = paper::TABLE5
        .iter()
        .flat_map(|&(e, t, _)| paper::TABLE5_ORDERS.iter().map(move |&k| (e, t, k)))
        .collect();
    let mut rows = step_rows(&cells, 0.5, 1e-10, van_der_pol)?;
    for (row, &(_, _, counts)) in rows.chunks_mut(4).zip(&paper::TABLE5) {
        for (r, &p) in row.iter_mut().zip(&counts) {
            r.paper_steps = Some(p);
            r.pass = Some(r.status == "completed" && steps_within(r.steps, p));
        }
    }
    emit(&rows, &args.output)?;
    if !args.check {
        return Ok(true);
    }
    let mut ok = true;
    for r in &rows {
        ok &= verdict(
            r.pass == Some(true),
            &format!(
                "eps={} T={} K={}: {} steps (paper {})",
                r.parameter,
                r.t_final,
                r.order,
                r.steps,
                r.paper_steps.unwrap_or(0)
            ),
        );
    }
    for row in rows.chunks(4) {
        let counts: Vec<usize> = row.iter().map(|r| r.steps).collect();
        ok &= verdict(
            counts.windows(2).all(|w| w[1] <= w[0]),
            &format!("eps={}: step counts non-increasing in K {counts:?}", row[0].parameter),
        );
    }
    Ok(ok)
}

pub fn seir_sweep(args: &SeirSweepArgs) -> Result<bool> {
    let cells: Vec<(f64, f64, usize)> = args
        .orders
        .iter()
        .flat_map(|&k| SEIR_ETAS.iter().map(move |&eta| (eta, args.tf, k)))
        .collect();
    let rows = step_rows(&cells, 0.5, 1e-5, seir_with(66.0))?;
    emit(&rows, &args.table.output)?;
    let completed = rows.iter().all(|r| r.status == "completed");
    if !args.table.check {
        return Ok(completed);
    }
    let mut ok = verdict(completed, "all runs completed");
    let n = SeirParams::default().n;
    let drift = rows.iter().filter_map(|r| r.sum_drift).fold(0.0, f64::max);
    ok &= verdict(drift <= 1e-6 * n, &format!("population drift {drift:.2e} <= {:.0e}", 1e-6 * n));
    for &k in &args.orders {
        let counts: Vec<usize> = rows.iter().filter(|r| r.order == k).map(|r| r.steps).collect();
        let max = *counts.iter().max().unwrap_or(&0) as f64;
        let min = *counts.iter().min().unwrap_or(&1) as f64;
        let ratio = max / min;
        ok &= verdict(
            ratio <= paper::SEIR_RATIO,
            &format!("K={k}: max/min step count over eta {ratio:.2} <= {} {counts:?}", paper::SEIR_RATIO),
        );
    }
    Ok(ok)
}
