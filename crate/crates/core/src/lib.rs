//! Arbitrary-order implicit-explicit local differential transform method
//! (IELDTM) for stiff initial value problems.
//!
//! Each step expands the solution in scaled Taylor coefficients
//! `X(k) = x^{(k)}/k!` about both ends of the interval and matches the two
//! truncated series at an interior point set by the direction parameter θ.
//!
//! ```
//! use ieldtm::problems::Duffing;
//! use ieldtm::stepper::{integrate_fixed, SchemeConfig};
//!
//! let problem = Duffing::logistic();
//! let trace = integrate_fixed(&problem, &SchemeConfig::fixed(0.5, 3, 0.05), 1.0).unwrap();
//! let exact = problem.exact_solution(1.0).unwrap();
//! assert!((trace.last().state[0] - exact[0]).abs() < 1e-8);
//! # use ieldtm::problems::Problem;
//! ```

pub mod error;
pub mod matrix;
pub mod nonlinear;
pub mod problems;
pub mod stability;
pub mod stepper;
pub mod taylor;

pub use error::{Error, Result};
pub use matrix::Matrix;
pub use nonlinear::NewtonConfig;
pub use problems::{Problem, ProblemDefinition, Side};
pub use stepper::{SchemeConfig, SolutionTrace, StepMode, StepRecord, TerminationStatus};
pub use taylor::CoeffTable;

pub use num_complex::Complex64;
