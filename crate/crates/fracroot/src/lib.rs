//! Root finding for nonlinear and linear systems via the fractional
//! pseudo-Newton method.
//!
//! The iteration is a fixed-point scheme `x <- x - P(x) f(x)` where `P` is a
//! diagonal matrix whose entries are Riemann-Liouville fractional derivatives
//! of the constant 1 (order `alpha`, nonzero on constants) plus a small
//! regularizer `epsilon`. No Jacobian is evaluated and no matrix is inverted,
//! and because negative real iterate components raise to fractional powers on
//! the principal branch, the iteration escapes the real line on its own:
//! complex roots are reached from real initial conditions.
//!
//! Sweeping the derivative order over `(0,1) u (1,2)` from a single starting
//! point visits different roots for different orders, so a seeded
//! [`sweep::alpha_sweep`] doubles as a multi-root search.
//!
//! # Quick start
//!
//! ```
//! use fracroot::fracderiv::FracOrder;
//! use fracroot::problems;
//! use fracroot::solver::{solve, SolveStatus, SolverConfig};
//!
//! let problem = problems::example3();
//! let mut config = SolverConfig::new(FracOrder::new(0.90162).unwrap());
//! config.epsilon = 1e-3;
//! let x0 = problem.reference_x0().expect("built-in start point");
//! let outcome = solve(&problem, &x0, &config, false).unwrap();
//! assert_eq!(outcome.status, SolveStatus::Converged);
//! ```
//!
//! Built-in problems live in [`problems`] (three benchmark systems and a
//! photovoltaic-thermoelectric hybrid receiver model); [`probing`] has
//! sign-change bracketing and a perturbation stability probe for choosing and
//! judging initial conditions.

pub mod complex;
pub mod error;
pub mod fracderiv;
pub mod gamma;
pub mod output;
pub mod probing;
pub mod problems;
pub mod solver;
pub mod sweep;

pub use complex::ComplexVector;
pub use error::Error;
pub use fracderiv::FracOrder;
pub use problems::ProblemDef;
pub use solver::{SolveOutcome, SolveStatus, SolverConfig};
pub use sweep::{RootRecord, RootRegistry, SweepPlan};
