mod common;

use common::{fuzz_programs, rel_diff};
use gridmix::analysis::oracle_solve;
use gridmix::{solve, SolverOptions, Status};

#[test]
fn simplex_agrees_with_vertex_enumeration() {
    let opts = SolverOptions::default();
    let mut statuses = [0usize; 3];
    for (i, lp) in fuzz_programs().iter().enumerate() {
        let ours = solve(lp, &opts).unwrap_or_else(|e| panic!("case {i}: {e}"));
        let oracle = oracle_solve(lp).unwrap();
        assert_eq!(ours.status, oracle.status, "case {i}: {lp:?}");
        statuses[match ours.status {
            Status::Optimal => 0,
            Status::Infeasible => 1,
            Status::Unbounded => 2,
        }] += 1;
        if ours.status == Status::Optimal {
            let o = oracle.objective.unwrap();
            assert!(rel_diff(ours.objective_value, o) <= 1e-6, "case {i}: {} vs {o}", ours.objective_value);
        }
    }
    // the generator should exercise every outcome
    assert!(statuses.iter().all(|&c| c > 50), "{statuses:?}");
}
