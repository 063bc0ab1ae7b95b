use super::control::Controller;
use super::step::{advance, build_coeff_table_on, local_error_estimate};
use super::{SchemeConfig, SolutionTrace, StepMode, StepRecord, TerminationStatus};
use crate::error::{Error, Result};
use crate::problems::{Problem, Side};

/// Fixed-step integration from the problem's default initial state.
pub fn integrate_fixed<P: Problem + ?Sized>(
    problem: &P,
    config: &SchemeConfig,
    t_final: f64,
) -> Result<SolutionTrace> {
    if !matches!(config.step_mode, StepMode::Fixed { .. }) {
        return Err(Error::InvalidConfig("integrate_fixed needs a fixed step".into()));
    }
    integrate(problem, config, &problem.default_initial(), t_final, &[])
}

/// Adaptive integration from the problem's default initial state.
pub fn integrate_adaptive<P: Problem + ?Sized>(
    problem: &P,
    config: &SchemeConfig,
    t_final: f64,
) -> Result<SolutionTrace> {
    if !matches!(config.step_mode, StepMode::Adaptive(_)) {
        return Err(Error::InvalidConfig("integrate_adaptive needs a tolerance".into()));
    }
    integrate(problem, config, &problem.default_initial(), t_final, &[])
}

/// Integrates over `[0, t_final]`.
///
/// A node is placed at every problem breakpoint and every time in `stops`.
/// Invalid input is an `Err`; failures during stepping end the trace early
/// with the corresponding [`TerminationStatus`].
pub fn integrate<P: Problem + ?Sized>(
    problem: &P,
    config: &SchemeConfig,
    initial: &[f64],
    t_final: f64,
    stops: &[f64],
) -> Result<SolutionTrace> {
    config.validate()?;
    if !(t_final > 0.0 && t_final.is_finite()) {
        return Err(Error::InvalidConfig(format!("t_final must be positive, got {t_final}")));
    }
    if initial.len() != problem.dim() {
        return Err(Error::DimensionMismatch {
            expected: problem.dim(),
            found: initial.len(),
        });
    }
    if !initial.iter().all(|v| v.is_finite()) {
        return Err(Error::NonFiniteState { t: 0.0 });
    }

    let mut nodes: Vec<f64> = problem
        .breakpoints()
        .into_iter()
        .chain(stops.iter().copied())
        .filter(|&s| s > 0.0 && s < t_final)
        .collect();
    nodes.push(t_final);
    nodes.sort_by(f64::total_cmp);
    nodes.dedup();

    let theta = config.theta;
    let order = config.order;
    let controller = match config.step_mode {
        StepMode::Adaptive(_) => Some(Controller::for_scheme(theta, order)?),
        StepMode::Fixed { .. } => None,
    };

    let mut records = vec![StepRecord {
        t: 0.0,
        state: initial.to_vec(),
        dt_used: 0.0,
        newton_iters: 0,
        local_error_estimate: 0.0,
    }];
    let mut t = 0.0;
    let mut state = initial.to_vec();
    let mut next_node = 0;
    let mut status = TerminationStatus::Completed;

    while next_node < nodes.len() {
        let stop = nodes[next_node];
        let table = match build_coeff_table_on(problem, t, Side::Forward, &state, order + 2) {
            Ok(table) => table,
            Err(e) => {
                status = TerminationStatus::Failed {
                    t,
                    message: e.to_string(),
                };
                break;
            }
        };

        let nominal = match (config.step_mode, controller) {
            (StepMode::Fixed { dt }, _) => dt,
            (StepMode::Adaptive(a), Some(ctrl)) => {
                let raw = ctrl.raw_step(&table, order, a.tol, a.safety)?;
                if raw < a.dt_min {
                    status = TerminationStatus::MinStepUnderflow { t, dt: raw };
                    break;
                }
                raw.min(a.dt_max.unwrap_or(t_final))
            }
            (StepMode::Adaptive(_), None) => unreachable!("controller resolved above"),
        };

        // Land exactly on the next node instead of leaving a sliver.
        let remaining = stop - t;
        let (dt, t_next, landed) = if nominal >= remaining * (1.0 - 1e-9) {
            (remaining, stop, true)
        } else {
            (nominal, t + nominal, false)
        };

        match advance(problem, &table, theta, order, dt, &config.newton) {
            Ok((next, iters)) => {
                records.push(StepRecord {
                    t: t_next,
                    local_error_estimate: local_error_estimate(&table, theta, order, dt),
                    state: next.clone(),
                    dt_used: dt,
                    newton_iters: iters,
                });
                state = next;
                t = t_next;
                if landed {
                    next_node += 1;
                }
            }
            Err(e @ (Error::NewtonFailure { .. } | Error::SingularJacobian)) => {
                status = TerminationStatus::NewtonFailure {
                    t,
                    message: e.to_string(),
                };
                break;
            }
            Err(e) => {
                status = TerminationStatus::Failed {
                    t,
                    message: e.to_string(),
                };
                break;
            }
        }
    }

    Ok(SolutionTrace {
        problem: problem.name().to_string(),
        config: *config,
        t_final,
        records,
        status,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problems::{Dahlquist, Duffing, ProblemDefinition, Seir, SeirParams};

    #[test]
    fn fixed_steps_land_on_final_time() {
        let trace = integrate_fixed(&Dahlquist::new(-1.0), &SchemeConfig::fixed(0.5, 2, 0.3), 1.0).unwrap();
        assert!(trace.is_completed());
        assert_eq!(trace.steps(), 4);
        assert_eq!(trace.last().t, 1.0);
        assert!((trace.last().dt_used - 0.1).abs() < 1e-12);
        let ts: Vec<f64> = trace.records.iter().map(|r| r.t).collect();
        assert!(ts.windows(2).all(|w| w[1] > w[0]));
    }

    #[test]
    fn no_sliver_steps_from_round_off() {
        let trace = integrate_fixed(&Duffing::logistic(), &SchemeConfig::fixed(0.5, 3, 0.05), 1.0).unwrap();
        assert_eq!(trace.steps(), 20);
        assert_eq!(trace.last().t, 1.0);
    }

    #[test]
    fn breakpoints_become_nodes() {
        let params = SeirParams {
            eta: 4.0,
            t_c: 10.05,
            ..SeirParams::default()
        };
        let seir = Seir::new(params).unwrap();
        let trace = integrate_fixed(&seir, &SchemeConfig::fixed(0.5, 4, 1.0), 20.0).unwrap();
        assert!(trace.records.iter().any(|r| r.t == 10.05));
        let trace = integrate(&seir, &SchemeConfig::adaptive(0.5, 5, 1e-3), &seir.default_initial(), 20.0, &[3.3])
            .unwrap();
        assert!(trace.records.iter().any(|r| r.t == 10.05));
        assert!(trace.records.iter().any(|r| r.t == 3.3));
    }

    #[test]
    fn stiff_mode_damped_by_central_scheme() {
        let trace = integrate_fixed(&Dahlquist::new(-1e6), &SchemeConfig::fixed(0.5, 2, 0.1), 2.0).unwrap();
        assert!(trace.is_completed());
        let mags: Vec<f64> = trace.records.iter().map(|r| r.state[0].abs()).collect();
        assert!(mags.windows(2).all(|w| w[1] <= w[0]));
    }

    #[test]
    fn underflow_reported() {
        let cfg = SchemeConfig::adaptive(0.0, 2, 1e-12).with_step_bounds(0.5, None);
        let trace = integrate_adaptive(&Dahlquist::new(-50.0), &cfg, 1.0).unwrap();
        assert!(matches!(trace.status, TerminationStatus::MinStepUnderflow { .. }));
        assert_eq!(trace.steps(), 0);
    }

    #[test]
    fn blow_up_reported_as_failure() {
        // x' = x², finite-time blow-up at t = 1.
        let p = ProblemDefinition::new("blowup", vec![1.0], |table, _, out| {
            let k = table.order();
            let s = table.series(0);
            out[0] = crate::taylor::cauchy_product(&s, &s, k)? / (k + 1) as f64;
            Ok(())
        });
        let trace = integrate_fixed(&p, &SchemeConfig::fixed(0.0, 4, 0.25), 3.0).unwrap();
        assert!(!trace.is_completed());
    }

    #[test]
    fn wrong_mode_and_bad_input_rejected() {
        let d = Dahlquist::new(-1.0);
        assert!(integrate_fixed(&d, &SchemeConfig::adaptive(0.5, 3, 1e-6), 1.0).is_err());
        assert!(integrate_adaptive(&d, &SchemeConfig::fixed(0.5, 3, 0.1), 1.0).is_err());
        assert!(integrate_fixed(&d, &SchemeConfig::fixed(0.5, 3, 0.1), -1.0).is_err());
        assert!(integrate(&d, &SchemeConfig::fixed(0.5, 3, 0.1), &[1.0, 2.0], 1.0, &[]).is_err());
    }
}
