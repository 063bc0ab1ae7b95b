use anyhow::{bail, Result};
use ieldtm::problems::{Dahlquist, Duffing, Problem, Robertson, Seir, SeirParams, VanDerPol};

use crate::args::{ProblemArgs, ProblemName};

pub fn build(args: &ProblemArgs) -> Result<Box<dyn Problem>> {
    Ok(match args.problem {
        ProblemName::Duffing => Box::new(Duffing::logistic()),
        ProblemName::Dahlquist => {
            if !args.lambda.is_finite() {
                bail!("lambda must be finite");
            }
            Box::new(Dahlquist::new(args.lambda))
        }
        ProblemName::Robertson => Box::new(Robertson::new()),
        ProblemName::VanDerPol => {
            if !args.epsilon.is_finite() || args.epsilon < 0.0 {
                bail!("epsilon must be non-negative");
            }
            Box::new(VanDerPol::new(args.epsilon))
        }
        ProblemName::Seir => Box::new(Seir::new(seir_params(args))?),
    })
}

pub fn seir_params(args: &ProblemArgs) -> SeirParams {
    let d = SeirParams::default();
    SeirParams {
        beta: args.beta.unwrap_or(d.beta),
        mu: args.mu.unwrap_or(d.mu),
        alpha: args.alpha.unwrap_or(d.alpha),
        d1: args.d1.unwrap_or(d.d1),
        d2: args.d2.unwrap_or(d.d2),
        d3: args.d3.unwrap_or(d.d3),
        p: args.p.unwrap_or(d.p),
        n: args.population.unwrap_or(d.n),
        eta: args.eta.unwrap_or(d.eta),
        t_c: args.tc.unwrap_or(d.t_c),
    }
}

/// Horizon used when `--tf` is not given.
pub fn default_final_time(args: &ProblemArgs) -> f64 {
    match args.problem {
        ProblemName::Duffing | ProblemName::Dahlquist => 1.0,
        ProblemName::Robertson => 4.0,
        ProblemName::VanDerPol => (10.0 * args.epsilon).max(1.0),
        ProblemName::Seir => 200.0,
    }
}
