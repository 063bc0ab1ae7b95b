use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use anyhow::{Context, Result};
use ieldtm::{SolutionTrace, StepMode};
use serde::Serialize;

use crate::args::Format;

/// Opens `path`, or stdout when it is `None`.
pub fn sink(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("cannot create {}", p.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

/// Per-step CSV with `#` metadata lines, or the whole trace as JSON.
pub fn write_trace(trace: &SolutionTrace, format: Format, oracle: &str, out: &mut dyn Write) -> Result<()> {
    match format {
        Format::Json => serde_json::to_writer_pretty(&mut *out, trace)?,
        Format::Csv => {
            let cfg = &trace.config;
            writeln!(out, "# problem: {}", trace.problem)?;
            writeln!(out, "# theta: {}", cfg.theta)?;
            writeln!(out, "# K: {}", cfg.order)?;
            match cfg.step_mode {
                StepMode::Fixed { dt } => writeln!(out, "# mode: fixed dt={dt}")?,
                StepMode::Adaptive(a) => writeln!(out, "# mode: adaptive tol={:e} safety={}", a.tol, a.safety)?,
            }
            writeln!(out, "# t_final: {}", trace.t_final)?;
            writeln!(out, "# oracle: {oracle}")?;
            writeln!(out, "# status: {}", trace.status.label())?;

            let dim = trace.records.first().map_or(0, |r| r.state.len());
            let mut w = csv::Writer::from_writer(&mut *out);
            let mut header = vec!["t".to_string()];
            header.extend((1..=dim).map(|i| format!("x{i}")));
            header.extend(["dt", "newton_iters", "local_err_est"].map(String::from));
            w.write_record(&header)?;
            for r in &trace.records {
                let mut row = vec![r.t.to_string()];
                row.extend(r.state.iter().map(f64::to_string));
                row.push(r.dt_used.to_string());
                row.push(r.newton_iters.to_string());
                row.push(r.local_error_estimate.to_string());
                w.write_record(&row)?;
            }
            w.flush()?;
        }
    }
    writeln!(out)?;
    Ok(())
}

pub fn write_rows<T: Serialize>(rows: &[T], format: Format, out: &mut dyn Write) -> Result<()> {
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, rows)?;
            writeln!(out)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            for row in rows {
                w.serialize(row)?;
            }
            w.flush()?;
        }
    }
    out.flush()?;
    Ok(())
}
