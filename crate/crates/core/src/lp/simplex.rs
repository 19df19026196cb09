use super::{
    pivot_rule, standardize_with, LinearProgram, LpError, PivotChoice, Solution, SolverOptions, StandardForm, Status,
    Tableau,
};

enum PhaseEnd {
    Optimal,
    Unbounded,
}

fn run_phase(tableau: &mut Tableau, opts: &SolverOptions, iterations: &mut usize) -> Result<PhaseEnd, LpError> {
    loop {
        match pivot_rule(tableau, opts) {
            PivotChoice::Optimal => return Ok(PhaseEnd::Optimal),
            PivotChoice::Unbounded { .. } => return Ok(PhaseEnd::Unbounded),
            PivotChoice::Pivot { row, col } => {
                if *iterations >= opts.max_iterations {
                    return Err(LpError::IterationLimit(opts.max_iterations));
                }
                tableau.pivot(row, col);
                *iterations += 1;
            }
        }
    }
}

/// Replaces basic artificials (all at zero level after a successful phase 1)
/// with structural columns where the row allows it. Rows with no usable
/// entry are redundant and keep their artificial, which is barred anyway.
fn drive_out_artificials(tableau: &mut Tableau, sf: &StandardForm, opts: &SolverOptions) {
    for row in 0..tableau.row_count() {
        if !sf.is_artificial(tableau.basis()[row]) {
            continue;
        }
        let best = (0..sf.column_count())
            .filter(|&j| !sf.is_artificial(j))
            .map(|j| (j, tableau.entry(row, j).abs()))
            .filter(|&(_, a)| a > opts.pivot_tol)
            .fold(None, |acc: Option<(usize, f64)>, c| match acc {
                Some(a) if a.1 >= c.1 => Some(a),
                _ => Some(c),
            });
        if let Some((col, _)) = best {
            tableau.pivot(row, col);
        }
    }
}

/// Solves `lp` with the two-phase simplex method.
///
/// Phase 1 minimizes the sum of artificials; a residual above
/// `feas_tol * max(1, max rhs)` in the equilibrated system means the program
/// is infeasible. Phase 2 then optimizes the real objective with artificials
/// barred from re-entering.
pub fn solve(lp: &LinearProgram, opts: &SolverOptions) -> Result<Solution, LpError> {
    let sf = standardize_with(lp, opts.equilibrate)?;
    let mut tableau = Tableau::new(sf.rows.clone(), sf.rhs.clone(), sf.basis.clone(), sf.column_count());
    let mut iterations = 0;

    if sf.artificial_count() > 0 {
        let phase_one: Vec<f64> = (0..sf.column_count())
            .map(|j| if sf.is_artificial(j) { 1.0 } else { 0.0 })
            .collect();
        tableau.set_costs(&phase_one);
        // bounded below by zero, so phase 1 always ends optimal
        run_phase(&mut tableau, opts, &mut iterations)?;
        let scale = sf.rhs.iter().fold(1.0f64, |acc, b| acc.max(b.abs()));
        if tableau.objective() > opts.feas_tol * scale {
            return Ok(Solution::without_point(Status::Infeasible, iterations));
        }
        drive_out_artificials(&mut tableau, &sf, opts);
        for j in 0..sf.column_count() {
            if sf.is_artificial(j) {
                tableau.bar(j);
            }
        }
    }

    tableau.set_costs(&sf.cost);
    if let PhaseEnd::Unbounded = run_phase(&mut tableau, opts, &mut iterations)? {
        return Ok(Solution::without_point(Status::Unbounded, iterations));
    }

    let z = tableau.primal();
    let values = sf.unshift(&z[..sf.original_count()]);
    Ok(describe(lp, values, opts.feas_tol, iterations))
}

fn describe(lp: &LinearProgram, values: Vec<f64>, tol: f64, iterations: usize) -> Solution {
    let mut activities = Vec::with_capacity(lp.constraints.len());
    let mut slacks = Vec::with_capacity(lp.constraints.len());
    let mut binding = Vec::new();
    for c in &lp.constraints {
        let lhs = c.activity(&values);
        let slack = (lhs - c.rhs).abs();
        if slack <= tol * c.scale_at(&values) {
            binding.push(c.label.clone());
        }
        activities.push(lhs);
        slacks.push(slack);
    }
    Solution {
        status: Status::Optimal,
        objective_value: lp.objective_at(&values),
        values,
        activities,
        slacks,
        binding,
        iterations,
    }
}
