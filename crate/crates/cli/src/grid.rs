use std::io::Write;

use anyhow::Result;
use ieldtm::stability::{is_a_stable, is_l_stable, sample_region, Sampler};
use ieldtm::Complex64;
use serde::Serialize;

use crate::args::{Format, GridArgs};
use crate::output::sink;

#[derive(Debug, Serialize)]
struct GridSummary {
    theta: f64,
    #[serde(rename = "K")]
    order: usize,
    a_stable: bool,
    witness: Option<Complex64>,
    l_stable: bool,
    unstable_fraction_lhp: f64,
}

pub fn run(args: &GridArgs) -> Result<bool> {
    if !(args.re_min < args.re_max && args.im_min < args.im_max) {
        anyhow::bail!("window bounds must satisfy min < max");
    }
    let grid = sample_region(
        args.theta,
        args.order,
        (args.re_min, args.re_max),
        (args.im_min, args.im_max),
        (args.n_re, args.n_im),
    );
    let mut out = sink(args.output.out.as_deref())?;
    match args.output.format {
        Format::Csv => grid.write_csv(&mut out)?,
        Format::Json => {
            serde_json::to_writer(&mut out, &grid)?;
            writeln!(out)?;
        }
    }
    out.flush()?;

    // With the grid on stdout, the certificate summary would corrupt it.
    if args.output.out.is_some() {
        let a = is_a_stable(args.theta, args.order, &Sampler::default())?;
        let summary = GridSummary {
            theta: args.theta,
            order: args.order,
            a_stable: a.stable,
            witness: a.witness,
            l_stable: is_l_stable(args.theta, args.order)?,
            unstable_fraction_lhp: grid.unstable_fraction_lhp(1e-10),
        };
        println!("{}", serde_json::to_string_pretty(&summary)?);
    }
    Ok(true)
}
