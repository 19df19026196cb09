//! Clean-energy portfolio planning as small linear programs.
//!
//! [`lp`] holds the simplex solver, [`model`] turns planning scenarios into
//! programs, [`derivation`] recomputes the published constants and
//! [`analysis`] cross-checks everything against brute-force vertex enumeration.

pub mod analysis;
pub mod cli;
pub mod derivation;
pub mod error;
pub mod format;
pub mod lp;
pub mod model;
pub mod units;

pub use error::{Error, Result};
pub use lp::{solve, Constraint, LinearProgram, Relation, Sense, Solution, SolverOptions, Status};
pub use model::{builtin_scenario, builtin_scenarios, compile, report, Scenario};
