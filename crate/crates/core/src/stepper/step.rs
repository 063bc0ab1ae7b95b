use crate::error::{Error, Result};
use crate::nonlinear::{newton_solve, NewtonConfig};
use crate::problems::{Problem, Side};
use crate::taylor::CoeffTable;

/// Expands the solution through `state` about `t` to coefficient index `depth`.
pub fn build_coeff_table<P: Problem + ?Sized>(
    problem: &P,
    t: f64,
    state: &[f64],
    depth: usize,
) -> Result<CoeffTable> {
    build_coeff_table_on(problem, t, Side::Forward, state, depth)
}

pub fn build_coeff_table_on<P: Problem + ?Sized>(
    problem: &P,
    t: f64,
    side: Side,
    state: &[f64],
    depth: usize,
) -> Result<CoeffTable> {
    if state.len() != problem.dim() {
        return Err(Error::DimensionMismatch {
            expected: problem.dim(),
            found: state.len(),
        });
    }
    let mut table = CoeffTable::with_capacity(t, state, depth + 1)?;
    let mut next = vec![0.0; state.len()];
    for _ in 0..depth {
        problem.next_coeff(&table, side, &mut next)?;
        table.push(&next)?;
    }
    Ok(table)
}

fn finite_or(t: f64, v: Vec<f64>) -> Result<Vec<f64>> {
    if v.iter().all(|x| x.is_finite()) {
        Ok(v)
    } else {
        Err(Error::NonFiniteState { t })
    }
}

/// Forward (θ = 0) step: the order-`K` series at `t + dt`.
pub fn explicit_step<P: Problem + ?Sized>(
    problem: &P,
    t: f64,
    state: &[f64],
    order: usize,
    dt: f64,
) -> Result<Vec<f64>> {
    let table = build_coeff_table(problem, t, state, order)?;
    let mut out = vec![0.0; state.len()];
    table.eval_into(dt, order, &mut out)?;
    finite_or(t + dt, out)
}

/// Continuity mismatch at the matching point for a trial `X_{i+1}(0)`.
///
/// `known` is the expansion about `t_i = t_next − dt`; it may be deeper than `order`.
pub fn implicit_residual<P: Problem + ?Sized>(
    problem: &P,
    t_next: f64,
    known: &CoeffTable,
    trial: &[f64],
    theta: f64,
    order: usize,
    dt: f64,
) -> Result<Vec<f64>> {
    let mut target = vec![0.0; known.dim()];
    known.eval_into((1.0 - theta) * dt, order, &mut target)?;
    backward_mismatch(problem, t_next, trial, &target, theta, order, dt)
}

fn backward_mismatch<P: Problem + ?Sized>(
    problem: &P,
    t_next: f64,
    trial: &[f64],
    target: &[f64],
    theta: f64,
    order: usize,
    dt: f64,
) -> Result<Vec<f64>> {
    let table = build_coeff_table_on(problem, t_next, Side::Backward, trial, order)?;
    let mut r = vec![0.0; trial.len()];
    table.eval_into(-theta * dt, order, &mut r)?;
    for (ri, ti) in r.iter_mut().zip(target) {
        *ri -= ti;
    }
    finite_or(t_next, r)
}

/// Implicit (θ > 0) step solved by Newton from the explicit predictor.
///
/// Returns the new state and the Newton iteration count.
pub fn implicit_step<P: Problem + ?Sized>(
    problem: &P,
    t: f64,
    state: &[f64],
    theta: f64,
    order: usize,
    dt: f64,
    newton: &NewtonConfig,
) -> Result<(Vec<f64>, usize)> {
    let table = build_coeff_table(problem, t, state, order)?;
    advance(problem, &table, theta, order, dt, newton)
}

/// Advances from an already expanded node.
pub(crate) fn advance<P: Problem + ?Sized>(
    problem: &P,
    known: &CoeffTable,
    theta: f64,
    order: usize,
    dt: f64,
    newton: &NewtonConfig,
) -> Result<(Vec<f64>, usize)> {
    let t_next = known.base_time() + dt;
    let mut predictor = vec![0.0; known.dim()];
    known.eval_into(dt, order, &mut predictor)?;
    if theta == 0.0 {
        return finite_or(t_next, predictor).map(|x| (x, 0));
    }

    let mut target = vec![0.0; known.dim()];
    known.eval_into((1.0 - theta) * dt, order, &mut target)?;
    let residual = |y: &[f64]| backward_mismatch(problem, t_next, y, &target, theta, order, dt);

    let predictor_ok = predictor.iter().all(|v| v.is_finite());
    let first = if predictor_ok {
        newton_solve(residual, &predictor, newton)
    } else {
        Err(Error::NonFiniteState { t: t_next })
    };
    let outcome = match first {
        Ok(o) => o,
        // A stiff mode can throw the explicit predictor far off; restart from the current state.
        Err(_) => newton_solve(residual, known.state(), newton)?,
    };
    finite_or(t_next, outcome.root).map(|x| (x, outcome.iters))
}

/// Leading local truncation term of a step of length `dt`.
///
/// Uses `X(K+2)` for the central odd-order scheme (whose `X(K+1)` term
/// cancels) and `X(K+1)` otherwise; returns 0 if the table is too shallow.
pub fn local_error_estimate(table: &CoeffTable, theta: f64, order: usize, dt: f64) -> f64 {
    if theta == 0.5 && order % 2 == 1 {
        if table.order() < order + 2 {
            return 0.0;
        }
        let c = 0.5f64.powi(order as i32 + 1) * (order + 1) as f64;
        c * table.max_norm(order + 2) * dt.powi(order as i32 + 2)
    } else {
        if table.order() < order + 1 {
            return 0.0;
        }
        let p = order as i32 + 1;
        let c = ((1.0 - theta).powi(p) - (-theta).powi(p)).abs();
        c * table.max_norm(order + 1) * dt.powi(p)
    }
}
