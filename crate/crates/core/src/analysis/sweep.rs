use rayon::prelude::*;
use serde::Serialize;

use crate::error::{config, Result};
use crate::lp::{solve, Solution, SolverOptions};
use crate::model::{compile, CapName, Scenario};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepPoint {
    pub value: f64,
    pub solution: Solution,
}

/// `steps` evenly spaced values from `from` to `to` inclusive.
pub fn linspace(from: f64, to: f64, steps: usize) -> Result<Vec<f64>> {
    if !from.is_finite() || !to.is_finite() {
        return Err(config("sweep bounds must be finite"));
    }
    if from > to {
        return Err(config(format!("sweep range is empty: from {from} > to {to}")));
    }
    match steps {
        0 => Err(config("sweep needs at least one step")),
        1 => Ok(vec![from]),
        _ => Ok((0..steps)
            .map(|i| {
                if i == steps - 1 {
                    to
                } else {
                    from + (to - from) * i as f64 / (steps - 1) as f64
                }
            })
            .collect()),
    }
}

/// Re-solves `scenario` once per value of `parameter`. Solves run in
/// parallel; results come back in input order, infeasible points included.
pub fn sweep(
    scenario: &Scenario,
    parameter: CapName,
    values: &[f64],
    opts: &SolverOptions,
) -> Result<Vec<SweepPoint>> {
    if scenario.parameter(parameter).is_none() {
        return Err(config(format!(
            "scenario `{}` has no `{parameter}` cap to sweep",
            scenario.name
        )));
    }
    let programs = values
        .iter()
        .map(|&v| compile(&scenario.with_parameter(parameter, v)?))
        .collect::<Result<Vec<_>>>()?;
    programs
        .par_iter()
        .zip(values.par_iter())
        .map(|(lp, &value)| {
            Ok(SweepPoint {
                value,
                solution: solve(lp, opts)?,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lp::Status;
    use crate::model::{builtin_scenario, CoefficientVariant};

    fn m4(v: CoefficientVariant) -> Scenario {
        builtin_scenario("m4_nuclear", v).unwrap()
    }

    #[test]
    fn linspace_edges() {
        assert_eq!(linspace(1.0, 3.0, 3).unwrap(), vec![1.0, 2.0, 3.0]);
        assert_eq!(linspace(5.0, 9.0, 1).unwrap(), vec![5.0]);
        assert!(linspace(2.0, 1.0, 4).is_err());
        assert!(linspace(1.0, 2.0, 0).is_err());
    }

    #[test]
    fn nuclear_nonincreasing_as_land_grows() {
        let values = linspace(2.06e8, 5.06e10, 20).unwrap();
        let pts = sweep(&m4(CoefficientVariant::AsPrinted), CapName::LandFt2, &values, &SolverOptions::default()).unwrap();
        assert_eq!(pts.len(), 20);
        for w in pts.windows(2) {
            assert_eq!(w[1].solution.status, Status::Optimal);
            let (a, b) = (w[0].solution.values[2], w[1].solution.values[2]);
            assert!(b <= a + 1e-6 * a.max(1.0), "{a} -> {b}");
        }
        assert!(pts[0].value < pts[19].value);
    }

    #[test]
    fn single_value_matches_plain_solve() {
        let s = m4(CoefficientVariant::AsPrinted);
        let pts = sweep(&s, CapName::LandFt2, &[50_589_860_000.0], &SolverOptions::default()).unwrap();
        let plain = solve(&compile(&s).unwrap(), &SolverOptions::default()).unwrap();
        assert_eq!(pts[0].solution, plain);
    }

    #[test]
    fn infeasible_points_are_kept() {
        let s = m4(CoefficientVariant::TableDerived);
        let pts = sweep(&s, CapName::LandFt2, &[205_898_600.0, 50_589_860_000.0], &SolverOptions::default()).unwrap();
        assert_eq!(pts[0].solution.status, Status::Infeasible);
        assert_eq!(pts[1].solution.status, Status::Optimal);
    }

    #[test]
    fn missing_cap_rejected() {
        let s = builtin_scenario("m0_cost_only", CoefficientVariant::AsPrinted).unwrap();
        assert!(sweep(&s, CapName::LandFt2, &[1.0], &SolverOptions::default()).is_err());
    }
}
