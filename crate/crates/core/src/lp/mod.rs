//! Dense-tableau two-phase simplex for small linear programs.
//!
//! Problems handled here are tiny (a handful of variables, a couple dozen
//! rows) but badly scaled: right-hand sides run from 1e5 to 1e13 within a
//! single model. Rows are equilibrated before phase 1 and every tolerance in
//! [`SolverOptions`] applies to the equilibrated system.

mod feasibility;
mod pivot;
mod simplex;
mod standard;

pub use feasibility::{check_feasible, FeasibilityReport, RowCheck};
pub use pivot::{pivot_rule, PivotChoice, PivotRule, Tableau};
pub use simplex::solve;
pub use standard::{standardize, standardize_with, ColumnKind, StandardForm};

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::units::Unit;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LpError {
    #[error("dimension mismatch in {what}: expected {expected}, found {found}")]
    DimensionMismatch {
        what: String,
        expected: usize,
        found: usize,
    },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("unit mismatch in constraint `{label}`: coefficients in {coefficients} per MWh, rhs in {rhs}")]
    UnitMismatch {
        label: String,
        coefficients: Unit,
        rhs: Unit,
    },
    #[error("simplex did not terminate within {0} iterations")]
    IterationLimit(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Sense {
    Minimize,
    Maximize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = "=")]
    Eq,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Le => "<=",
            Relation::Ge => ">=",
            Relation::Eq => "=",
        })
    }
}

/// One linear row `coefficients · x (relation) rhs`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Constraint {
    pub label: String,
    pub coefficients: Vec<f64>,
    pub relation: Relation,
    pub rhs: f64,
    /// Unit of the right-hand side.
    #[serde(default)]
    pub unit: Unit,
    /// Numerator unit of every coefficient (the denominator is always MWh).
    #[serde(default)]
    pub coefficient_unit: Unit,
}

impl Constraint {
    pub fn new(label: impl Into<String>, coefficients: Vec<f64>, relation: Relation, rhs: f64) -> Self {
        Self {
            label: label.into(),
            coefficients,
            relation,
            rhs,
            unit: Unit::Dimensionless,
            coefficient_unit: Unit::Dimensionless,
        }
    }

    pub fn le(label: impl Into<String>, coefficients: Vec<f64>, rhs: f64) -> Self {
        Self::new(label, coefficients, Relation::Le, rhs)
    }

    pub fn ge(label: impl Into<String>, coefficients: Vec<f64>, rhs: f64) -> Self {
        Self::new(label, coefficients, Relation::Ge, rhs)
    }

    pub fn eq(label: impl Into<String>, coefficients: Vec<f64>, rhs: f64) -> Self {
        Self::new(label, coefficients, Relation::Eq, rhs)
    }

    /// Tags both the right-hand side and the coefficient numerators with `unit`.
    pub fn in_unit(mut self, unit: Unit) -> Self {
        self.unit = unit;
        self.coefficient_unit = unit;
        self
    }

    pub fn activity(&self, values: &[f64]) -> f64 {
        dot(&self.coefficients, values)
    }

    /// Scale used to turn absolute residuals of this row into relative ones.
    pub(crate) fn scale_at(&self, values: &[f64]) -> f64 {
        let terms = self
            .coefficients
            .iter()
            .zip(values)
            .map(|(a, x)| (a * x).abs())
            .fold(0.0, f64::max);
        terms.max(self.rhs.abs()).max(1.0)
    }

    /// Amount by which `values` violate this row (zero when satisfied).
    pub fn violation(&self, values: &[f64]) -> f64 {
        let lhs = self.activity(values);
        match self.relation {
            Relation::Le => (lhs - self.rhs).max(0.0),
            Relation::Ge => (self.rhs - lhs).max(0.0),
            Relation::Eq => (lhs - self.rhs).abs(),
        }
    }
}

/// A linear program over nonnegative (or lower-bounded) continuous variables.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinearProgram {
    pub sense: Sense,
    pub objective: Vec<f64>,
    #[serde(default)]
    pub objective_unit: Unit,
    pub constraints: Vec<Constraint>,
    /// Empty in a file means all zero.
    #[serde(default)]
    pub lower_bounds: Vec<f64>,
    /// Empty in a file means `x1..xn`.
    #[serde(default)]
    pub names: Vec<String>,
}

impl LinearProgram {
    /// Program with the given objective, zero lower bounds and names `x1..xn`.
    pub fn new(sense: Sense, objective: Vec<f64>) -> Self {
        let n = objective.len();
        Self {
            sense,
            objective,
            objective_unit: Unit::Dimensionless,
            constraints: Vec::new(),
            lower_bounds: vec![0.0; n],
            names: (1..=n).map(|i| format!("x{i}")).collect(),
        }
    }

    pub fn minimize(objective: Vec<f64>) -> Self {
        Self::new(Sense::Minimize, objective)
    }

    pub fn maximize(objective: Vec<f64>) -> Self {
        Self::new(Sense::Maximize, objective)
    }

    pub fn subject_to(mut self, constraint: Constraint) -> Self {
        self.constraints.push(constraint);
        self
    }

    pub fn with_lower_bounds(mut self, lower_bounds: Vec<f64>) -> Self {
        self.lower_bounds = lower_bounds;
        self
    }

    pub fn with_names<S: Into<String>>(mut self, names: impl IntoIterator<Item = S>) -> Self {
        self.names = names.into_iter().map(Into::into).collect();
        self
    }

    /// Fills in zero lower bounds and `x1..xn` names when they are missing.
    pub fn fill_defaults(&mut self) {
        let n = self.objective.len();
        if self.lower_bounds.is_empty() {
            self.lower_bounds = vec![0.0; n];
        }
        if self.names.is_empty() {
            self.names = (1..=n).map(|j| format!("x{j}")).collect();
        }
    }

    pub fn var_count(&self) -> usize {
        self.objective.len()
    }

    pub fn objective_at(&self, values: &[f64]) -> f64 {
        dot(&self.objective, values)
    }

    pub fn constraint(&self, label: &str) -> Option<&Constraint> {
        self.constraints.iter().find(|c| c.label == label)
    }

    pub fn validate(&self) -> Result<(), LpError> {
        let n = self.var_count();
        if n == 0 {
            return Err(LpError::InvalidInput("program has no variables".into()));
        }
        let expect = |what: String, found: usize| {
            if found == n {
                Ok(())
            } else {
                Err(LpError::DimensionMismatch {
                    what,
                    expected: n,
                    found,
                })
            }
        };
        expect("lower bounds".into(), self.lower_bounds.len())?;
        expect("variable names".into(), self.names.len())?;
        if let Some(j) = self.objective.iter().position(|c| !c.is_finite()) {
            return Err(LpError::InvalidInput(format!(
                "objective coefficient {} is not finite",
                self.names[j]
            )));
        }
        for (j, &l) in self.lower_bounds.iter().enumerate() {
            if !l.is_finite() || l < 0.0 {
                return Err(LpError::InvalidInput(format!(
                    "lower bound of {} must be finite and nonnegative, got {l}",
                    self.names[j]
                )));
            }
        }
        for c in &self.constraints {
            expect(format!("constraint `{}`", c.label), c.coefficients.len())?;
            if c.coefficients.iter().any(|a| !a.is_finite()) || !c.rhs.is_finite() {
                return Err(LpError::InvalidInput(format!(
                    "constraint `{}` has a non-finite entry",
                    c.label
                )));
            }
            if c.coefficients.iter().all(|&a| a == 0.0) {
                return Err(LpError::InvalidInput(format!(
                    "constraint `{}` has no nonzero coefficient",
                    c.label
                )));
            }
            if c.unit != c.coefficient_unit {
                return Err(LpError::UnitMismatch {
                    label: c.label.clone(),
                    coefficients: c.coefficient_unit,
                    rhs: c.unit,
                });
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Optimal,
    Infeasible,
    Unbounded,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Optimal => "optimal",
            Status::Infeasible => "infeasible",
            Status::Unbounded => "unbounded",
        })
    }
}

/// Result of [`solve`]. Only `status` and `iterations` are meaningful unless
/// the status is [`Status::Optimal`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Solution {
    pub status: Status,
    pub values: Vec<f64>,
    pub objective_value: f64,
    pub activities: Vec<f64>,
    pub slacks: Vec<f64>,
    pub binding: Vec<String>,
    pub iterations: usize,
}

impl Solution {
    pub(crate) fn without_point(status: Status, iterations: usize) -> Self {
        Self {
            status,
            values: Vec::new(),
            objective_value: f64::NAN,
            activities: Vec::new(),
            slacks: Vec::new(),
            binding: Vec::new(),
            iterations,
        }
    }

    pub fn is_optimal(&self) -> bool {
        self.status == Status::Optimal
    }

    pub fn is_binding(&self, label: &str) -> bool {
        self.binding.iter().any(|b| b == label)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolverOptions {
    /// Relative feasibility tolerance (phase-1 residual, binding detection).
    pub feas_tol: f64,
    /// Smallest pivot magnitude accepted in the ratio test.
    pub pivot_tol: f64,
    /// Reduced costs above `-opt_tol` count as nonnegative.
    pub opt_tol: f64,
    pub max_iterations: usize,
    pub rule: PivotRule,
    /// Switch from Dantzig to Bland after a run of non-improving pivots.
    pub anti_cycling: bool,
    /// Length of that run; `None` means `2 * (rows + columns)`.
    pub stall_limit: Option<usize>,
    /// Divide each row by its largest coefficient before phase 1.
    pub equilibrate: bool,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            feas_tol: 1e-7,
            pivot_tol: 1e-9,
            opt_tol: 1e-9,
            max_iterations: 10_000,
            rule: PivotRule::Dantzig,
            anti_cycling: true,
            stall_limit: None,
            equilibrate: true,
        }
    }
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}
