//! Brute-force verification and exploration on top of the solver.

mod audit;
mod corner;
mod sweep;
mod vertices;

pub use audit::{reproduce_paper, variant_str, AuditRow, DeltaClass, ReproductionReport, TableAudit};
pub use corner::{corner_objectives, corner_report, corner_system, CornerReport, NamedObjective};
pub use sweep::{linspace, sweep, SweepPoint};
pub use vertices::{enumerate_vertices, is_vertex, oracle_solve, OracleResult, Vertex, MAX_VARS, VERTEX_TOL};
