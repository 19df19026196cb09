use serde::Serialize;

use super::{LinearProgram, Relation};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RowCheck {
    pub label: String,
    pub relation: Relation,
    pub activity: f64,
    pub rhs: f64,
    pub slack: f64,
    /// Violation divided by the row scale `max(1, |rhs|, max |a_j x_j|)`.
    pub relative_violation: f64,
    pub satisfied: bool,
    pub binding: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FeasibilityReport {
    pub feasible: bool,
    pub rows: Vec<RowCheck>,
    /// Variables below their lower bound.
    pub bound_violations: Vec<String>,
    pub worst_violation: f64,
    pub worst_label: Option<String>,
    pub violated: Vec<String>,
    pub binding: Vec<String>,
}

/// Audits a candidate point against every row and lower bound of `lp`.
/// `tol` is relative to each row's scale.
///
/// # Panics
///
/// When `values.len() != lp.var_count()`.
pub fn check_feasible(lp: &LinearProgram, values: &[f64], tol: f64) -> FeasibilityReport {
    assert_eq!(values.len(), lp.var_count(), "point has wrong dimension");
    let mut rows = Vec::with_capacity(lp.constraints.len());
    let mut worst = 0.0;
    let mut worst_label = None;
    for c in &lp.constraints {
        let activity = c.activity(values);
        let scale = c.scale_at(values);
        let relative_violation = c.violation(values) / scale;
        let slack = (activity - c.rhs).abs();
        if relative_violation > worst {
            worst = relative_violation;
            worst_label = Some(c.label.clone());
        }
        rows.push(RowCheck {
            label: c.label.clone(),
            relation: c.relation,
            activity,
            rhs: c.rhs,
            slack,
            relative_violation,
            satisfied: relative_violation <= tol,
            binding: slack <= tol * scale,
        });
    }
    let bound_violations: Vec<String> = lp
        .lower_bounds
        .iter()
        .zip(values)
        .zip(&lp.names)
        .filter(|((l, x), _)| **x < **l - tol * l.abs().max(1.0))
        .map(|(_, name)| name.clone())
        .collect();
    let violated: Vec<String> = rows.iter().filter(|r| !r.satisfied).map(|r| r.label.clone()).collect();
    let binding = rows.iter().filter(|r| r.binding).map(|r| r.label.clone()).collect();
    FeasibilityReport {
        feasible: violated.is_empty() && bound_violations.is_empty(),
        rows,
        bound_violations,
        worst_violation: worst,
        worst_label,
        violated,
        binding,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lp::Constraint;

    fn simple() -> LinearProgram {
        LinearProgram::minimize(vec![1.0, 1.0])
            .subject_to(Constraint::ge("demand", vec![1.0, 1.0], 10.0))
            .subject_to(Constraint::le("cap", vec![1.0, 0.0], 8.0))
    }

    #[test]
    fn reports_binding_rows() {
        let r = check_feasible(&simple(), &[8.0, 2.0], 1e-9);
        assert!(r.feasible);
        assert_eq!(r.binding, vec!["demand", "cap"]);
        assert_eq!(r.worst_violation, 0.0);
    }

    #[test]
    fn reports_violations() {
        let r = check_feasible(&simple(), &[0.0, 0.0], 1e-9);
        assert!(!r.feasible);
        assert_eq!(r.violated, vec!["demand"]);
        assert_eq!(r.worst_label.as_deref(), Some("demand"));
        assert!((r.worst_violation - 1.0).abs() < 1e-12);
    }

    #[test]
    fn reports_bound_violations() {
        let lp = simple().with_lower_bounds(vec![0.0, 3.0]);
        let r = check_feasible(&lp, &[8.0, 2.0], 1e-9);
        assert!(!r.feasible);
        assert_eq!(r.bound_violations, vec!["x2"]);
    }
}
