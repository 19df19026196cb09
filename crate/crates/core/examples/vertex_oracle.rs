//! Enumerate every vertex of a small program and check the simplex optimum
//! against the brute-force one.

use gridmix::analysis::{enumerate_vertices, is_vertex, oracle_solve};
use gridmix::model::CoefficientVariant;
use gridmix::{builtin_scenario, compile, solve, SolverOptions};

fn main() -> gridmix::Result<()> {
    let s = builtin_scenario("m3_shared_space", CoefficientVariant::AsPrinted)?;
    let lp = compile(&s)?;

    let vertices = enumerate_vertices(&lp)?;
    for v in &vertices {
        let p: Vec<String> = v.point.iter().map(|x| format!("{x:.0}")).collect();
        println!("({}) objective {:.0} on {}", p.join(", "), v.objective, v.binding.join(" & "));
    }

    let oracle = oracle_solve(&lp)?;
    let sol = solve(&lp, &SolverOptions::default())?;
    println!("\noracle {} {:?}, simplex {} {}", oracle.status, oracle.objective, sol.status, sol.objective_value);
    println!("simplex point is a vertex: {}", is_vertex(&vertices, &sol.values));
    println!("published point is a vertex: {}", is_vertex(&vertices, &[24_862_479.0, 3_900_512.0]));
    Ok(())
}
