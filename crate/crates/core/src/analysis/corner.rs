use serde::Serialize;

use super::vertices::{enumerate_vertices, Vertex};
use crate::error::{config, Result};
use crate::lp::{dot, Constraint, LinearProgram};
use crate::units::Unit;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NamedObjective {
    pub name: String,
    pub coefficients: Vec<f64>,
}

impl NamedObjective {
    pub fn new(name: impl Into<String>, coefficients: Vec<f64>) -> Self {
        Self {
            name: name.into(),
            coefficients,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CornerReport {
    pub vertices: Vec<Vertex>,
    pub objectives: Vec<String>,
    /// `values[v][k]`: objective `k` at vertex `v`.
    pub values: Vec<Vec<f64>>,
    /// Per objective, every vertex attaining its minimum (ties within 1e-9 relative).
    pub argmin: Vec<Vec<usize>>,
    /// Some vertex minimizes every objective at once.
    pub shared_argmin: bool,
}

impl CornerReport {
    /// Index of the vertex closest to `point` (max-norm).
    pub fn nearest(&self, point: &[f64]) -> Option<usize> {
        let dist = |v: &Vertex| {
            v.point
                .iter()
                .zip(point)
                .fold(0.0f64, |m, (a, b)| m.max((a - b).abs()))
        };
        (0..self.vertices.len()).min_by(|&a, &b| dist(&self.vertices[a]).total_cmp(&dist(&self.vertices[b])))
    }

    pub fn value(&self, vertex: usize, objective: &str) -> Option<f64> {
        let k = self.objectives.iter().position(|o| o == objective)?;
        self.values.get(vertex).map(|row| row[k])
    }
}

/// Evaluates each objective at every vertex of `lp` and marks the minimizers.
pub fn corner_report(lp: &LinearProgram, objectives: &[NamedObjective]) -> Result<CornerReport> {
    let n = lp.var_count();
    if let Some(bad) = objectives.iter().find(|o| o.coefficients.len() != n) {
        return Err(config(format!(
            "objective `{}` has {} coefficients, program has {n} variables",
            bad.name,
            bad.coefficients.len()
        )));
    }
    let vertices = enumerate_vertices(lp)?;
    let values: Vec<Vec<f64>> = vertices
        .iter()
        .map(|v| objectives.iter().map(|o| dot(&o.coefficients, &v.point)).collect())
        .collect();
    let argmin: Vec<Vec<usize>> = (0..objectives.len())
        .map(|k| {
            let best = values.iter().map(|r| r[k]).fold(f64::INFINITY, f64::min);
            let tol = 1e-9 * best.abs().max(1.0);
            (0..values.len()).filter(|&v| values[v][k] - best <= tol).collect()
        })
        .collect();
    let shared_argmin = !vertices.is_empty()
        && (0..vertices.len()).any(|v| argmin.iter().all(|set| set.contains(&v)));
    Ok(CornerReport {
        vertices,
        objectives: objectives.iter().map(|o| o.name.clone()).collect(),
        values,
        argmin,
        shared_argmin,
    })
}

/// Wind/solar feasible set whose coefficients reproduce the published
/// shared-space production rows exactly: early-morning shares 0.38/0.01,
/// daytime 0.3769/0.9797, evening 0.24/0.01, the 3.578e12 g emissions cap,
/// the $2e9 budget and an unshifted shared land row.
pub fn corner_system() -> LinearProgram {
    LinearProgram::minimize(vec![37.80, 58.62])
        .with_names(["wind", "solar"])
        .subject_to(Constraint::ge("demand_early_morning", vec![0.38, 0.01], 7.069e6).in_unit(Unit::Mwh))
        .subject_to(Constraint::ge("demand_daytime", vec![0.3769, 0.9797], 13.192e6).in_unit(Unit::Mwh))
        .subject_to(Constraint::ge("demand_evening", vec![0.24, 0.01], 6.006e6).in_unit(Unit::Mwh))
        .subject_to(Constraint::le("emissions", vec![4970.0, 45_000.0], 3.578e12).in_unit(Unit::GramsCo2))
        .subject_to(Constraint::le("budget", vec![27.45, 39.12], 2e9).in_unit(Unit::Usd))
        .subject_to(Constraint::le("land", vec![1065.6, 204.5], 50_589_860_000.0).in_unit(Unit::SquareFeet))
}

/// The two cost objectives compared at the corners.
pub fn corner_objectives() -> Vec<NamedObjective> {
    vec![
        NamedObjective::new("om", vec![10.35, 19.51]),
        NamedObjective::new("lcoe", vec![37.80, 58.62]),
    ]
}
