//! Dense Newton root finding and LU solves for the implicit step.

mod lu;
mod newton;

pub use lu::{lu_solve, LuDecomposition};
pub use newton::{fd_jacobian, newton_solve, NewtonConfig, NewtonOutcome};
