//! `ieldtm` command-line harness: trajectories, error and order tables,
//! step counts and stability grids.

mod args;
mod grid;
mod oracle;
mod output;
mod paper;
mod problem;
mod solve;
mod tables;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Solve(a) => solve::run(a),
        Command::OrderSweep(a) => tables::order_sweep(a),
        Command::StepCount(a) => tables::step_count(a),
        Command::StabilityGrid(a) => grid::run(a),
        Command::Table2(a) => tables::table2(a),
        Command::Table3(a) => tables::table3(a),
        Command::Table4(a) => tables::table4(a),
        Command::Table5(a) => tables::table5(a),
        Command::SeirSweep(a) => tables::seir_sweep(a),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
