//! Build a linear program by hand, solve it, and look at slacks.

use gridmix::lp::{check_feasible, PivotRule};
use gridmix::{solve, Constraint, LinearProgram, SolverOptions};

fn main() -> Result<(), gridmix::lp::LpError> {
    // Two plants, a demand floor, a fuel budget and a minimum run for plant b.
    let lp = LinearProgram::minimize(vec![42.0, 55.0])
        .with_names(["a", "b"])
        .subject_to(Constraint::ge("demand", vec![1.0, 1.0], 900.0))
        .subject_to(Constraint::le("fuel", vec![3.0, 1.0], 2400.0))
        .subject_to(Constraint::eq("contract", vec![0.0, 1.0], 250.0))
        .with_lower_bounds(vec![100.0, 0.0]);

    let sol = solve(&lp, &SolverOptions::default())?;
    println!("{} after {} pivots, cost {}", sol.status, sol.iterations, sol.objective_value);
    if !sol.is_optimal() {
        return Ok(());
    }
    for (name, x) in lp.names.iter().zip(&sol.values) {
        println!("  {name} = {x}");
    }
    for (c, slack) in lp.constraints.iter().zip(&sol.slacks) {
        println!("  {:<8} slack {slack}", c.label);
    }
    let check = check_feasible(&lp, &sol.values, 1e-9);
    println!("feasible: {}, binding: {:?}", check.feasible, check.binding);

    // Bland's rule reaches the same optimum, usually in more pivots.
    let bland = solve(&lp, &SolverOptions { rule: PivotRule::Bland, ..SolverOptions::default() })?;
    println!("bland: cost {} after {} pivots", bland.objective_value, bland.iterations);
    Ok(())
}
