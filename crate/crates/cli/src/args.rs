use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "ieldtm",
    version,
    about = "Stiff initial value problems with the implicit-explicit local differential transform method"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Integrate one problem and report a JSON summary; the trace goes to --out.
    Solve(SolveArgs),
    /// Observed convergence order for θ ∈ {0, 0.5, 1} and K = 1..max.
    OrderSweep(OrderSweepArgs),
    /// Adaptive step counts: the Van der Pol (ε, T) grid or the SEIR η sweep.
    StepCount(StepCountArgs),
    /// |R(z)| on a rectangle of the complex plane, as `re,im,absR` rows.
    StabilityGrid(GridArgs),
    /// Order table for the logistic Duffing problem.
    Table2(TableArgs),
    /// Adaptive Duffing runs at tol = 1e-10.
    Table3(TableArgs),
    /// Fixed-step Robertson errors at t = 4.
    Table4(TableArgs),
    /// Van der Pol adaptive step counts at tol = 1e-10.
    Table5(TableArgs),
    /// SEIR step counts across η ∈ [1, 12] with t_c = 66 and tol = 1e-5.
    SeirSweep(SeirSweepArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ProblemName {
    Duffing,
    Dahlquist,
    Robertson,
    #[value(alias = "vdp", alias = "vanderpol")]
    VanDerPol,
    Seir,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum OracleChoice {
    /// Closed form when the problem has one, otherwise refined.
    #[default]
    Auto,
    Exact,
    Refined,
    None,
}

/// Problem selection and parameter overrides.
#[derive(Debug, Clone, Args)]
pub struct ProblemArgs {
    #[arg(long, value_enum, default_value = "duffing")]
    pub problem: ProblemName,
    /// Dahlquist rate.
    #[arg(long, default_value_t = -1.0, allow_hyphen_values = true)]
    pub lambda: f64,
    /// Van der Pol stiffness parameter.
    #[arg(long, default_value_t = 1.0)]
    pub epsilon: f64,
    /// SEIR transmission scaling after t_c.
    #[arg(long)]
    pub eta: Option<f64>,
    /// SEIR switch time.
    #[arg(long)]
    pub tc: Option<f64>,
    /// SEIR daily transmission rate.
    #[arg(long)]
    pub beta: Option<f64>,
    /// SEIR transmission reduction factor.
    #[arg(long)]
    pub mu: Option<f64>,
    /// SEIR pre-symptomatic ratio.
    #[arg(long)]
    pub alpha: Option<f64>,
    /// SEIR latency period.
    #[arg(long)]
    pub d1: Option<f64>,
    /// SEIR pre-symptomatic period.
    #[arg(long)]
    pub d2: Option<f64>,
    /// SEIR asymptomatic period.
    #[arg(long)]
    pub d3: Option<f64>,
    /// SEIR hospitalization period.
    #[arg(long)]
    pub p: Option<f64>,
    /// SEIR total population.
    #[arg(long)]
    pub population: Option<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct SchemeArgs {
    /// Direction parameter in [0, 1].
    #[arg(long, default_value_t = 0.5, value_parser = parse_theta)]
    pub theta: f64,
    /// Truncation order.
    #[arg(long = "K", default_value_t = 3, value_parser = parse_order)]
    pub order: usize,
    /// Fixed step size.
    #[arg(long, conflicts_with = "tol", value_parser = parse_positive)]
    pub dt: Option<f64>,
    /// Adaptive tolerance.
    #[arg(long, value_parser = parse_positive)]
    pub tol: Option<f64>,
    /// Step-size safety factor for adaptive runs.
    #[arg(long, default_value_t = 0.9)]
    pub safety: f64,
    #[arg(long, default_value_t = 1e-12, value_parser = parse_positive)]
    pub dt_min: f64,
    #[arg(long, value_parser = parse_positive)]
    pub dt_max: Option<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Output file; tables go to stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
}

#[derive(Debug, Clone, Args)]
pub struct SolveArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,
    #[command(flatten)]
    pub scheme: SchemeArgs,
    /// Final time; defaults to the problem's usual horizon.
    #[arg(long, value_parser = parse_positive)]
    pub tf: Option<f64>,
    #[arg(long, value_enum, default_value = "auto")]
    pub oracle: OracleChoice,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct OrderSweepArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,
    /// Coarse step; the sweep also runs dt/2.
    #[arg(long, default_value_t = 0.05, value_parser = parse_positive)]
    pub dt: f64,
    #[arg(long, value_parser = parse_positive)]
    pub tf: Option<f64>,
    #[arg(long, default_value_t = 6, value_parser = parse_order)]
    pub max_k: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct StepCountArgs {
    /// `van-der-pol` or `seir`.
    #[arg(long, value_enum, default_value = "van-der-pol")]
    pub problem: ProblemName,
    #[arg(long, default_value_t = 0.5, value_parser = parse_theta)]
    pub theta: f64,
    /// Orders to run; defaults to 3,5,7,9 (Van der Pol) or 6,8 (SEIR).
    #[arg(long = "K", value_delimiter = ',', value_parser = parse_order)]
    pub orders: Vec<usize>,
    /// Defaults to 1e-10 (Van der Pol) or 1e-5 (SEIR).
    #[arg(long, value_parser = parse_positive)]
    pub tol: Option<f64>,
    /// Restrict Van der Pol to one ε (T defaults to 10ε).
    #[arg(long)]
    pub epsilon: Option<f64>,
    #[arg(long, value_parser = parse_positive)]
    pub tf: Option<f64>,
    #[arg(long)]
    pub tc: Option<f64>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct GridArgs {
    #[arg(long, default_value_t = 0.5, value_parser = parse_theta)]
    pub theta: f64,
    #[arg(long = "K", default_value_t = 3, value_parser = parse_order)]
    pub order: usize,
    #[arg(long, default_value_t = -10.0, allow_hyphen_values = true)]
    pub re_min: f64,
    #[arg(long, default_value_t = 5.0, allow_hyphen_values = true)]
    pub re_max: f64,
    #[arg(long, default_value_t = -10.0, allow_hyphen_values = true)]
    pub im_min: f64,
    #[arg(long, default_value_t = 10.0, allow_hyphen_values = true)]
    pub im_max: f64,
    #[arg(long, default_value_t = 400)]
    pub n_re: usize,
    #[arg(long, default_value_t = 400)]
    pub n_im: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct TableArgs {
    /// Compare against the published values; exit status 1 on violation.
    #[arg(long)]
    pub check: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct SeirSweepArgs {
    /// Final time (days).
    #[arg(long, default_value_t = 200.0, value_parser = parse_positive)]
    pub tf: f64,
    #[arg(long = "K", value_delimiter = ',', default_values_t = [6, 8], value_parser = parse_order)]
    pub orders: Vec<usize>,
    #[command(flatten)]
    pub table: TableArgs,
}

fn parse_theta(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if (0.0..=1.0).contains(&v) {
        Ok(v)
    } else {
        Err(format!("theta must lie in [0, 1], got {v}"))
    }
}

fn parse_order(s: &str) -> Result<usize, String> {
    let v: usize = s.parse().map_err(|e| format!("{e}"))?;
    if v >= 1 {
        Ok(v)
    } else {
        Err("order K must be at least 1".into())
    }
}

fn parse_positive(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(format!("expected a positive number, got {v}"))
    }
}
