//! Beale's degenerate program cycles under plain Dantzig pivoting. The stall
//! detector falls back to Bland's rule and terminates.

use gridmix::lp::PivotRule;
use gridmix::{solve, Constraint, LinearProgram, SolverOptions};

fn main() {
    let lp = LinearProgram::minimize(vec![-0.75, 20.0, -0.5, 6.0])
        .subject_to(Constraint::le("r1", vec![0.25, -8.0, -1.0, 9.0], 0.0))
        .subject_to(Constraint::le("r2", vec![0.5, -12.0, -0.5, 3.0], 0.0))
        .subject_to(Constraint::le("r3", vec![0.0, 0.0, 1.0, 0.0], 1.0));

    // equilibration perturbs the tableau enough to dodge the cycle
    let raw = SolverOptions { equilibrate: false, max_iterations: 50, ..SolverOptions::default() };

    let plain = SolverOptions { anti_cycling: false, ..raw.clone() };
    match solve(&lp, &plain) {
        Ok(s) => println!("dantzig only: {} in {} pivots", s.status, s.iterations),
        Err(e) => println!("dantzig only: {e}"),
    }
    let s = solve(&lp, &raw).expect("fallback terminates");
    println!("with fallback: {} {} in {} pivots", s.status, s.objective_value, s.iterations);
    let s = solve(&lp, &SolverOptions { rule: PivotRule::Bland, ..raw }).expect("bland terminates");
    println!("bland throughout: {} {} in {} pivots", s.status, s.objective_value, s.iterations);
}
