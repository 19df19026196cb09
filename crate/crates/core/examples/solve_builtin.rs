//! Solve a built-in scenario and print its report.
//!
//! cargo run --example solve_builtin -- m3_shared_space table-derived

use gridmix::format::whole;
use gridmix::model::CoefficientVariant;
use gridmix::{builtin_scenario, compile, report, solve, SolverOptions};

fn main() -> gridmix::Result<()> {
    let mut args = std::env::args().skip(1);
    let name = args.next().unwrap_or_else(|| "m1_flat_demand".into());
    let variant = match args.next().as_deref() {
        Some("table-derived") => CoefficientVariant::TableDerived,
        _ => CoefficientVariant::AsPrinted,
    };

    let scenario = builtin_scenario(&name, variant)?;
    let lp = compile(&scenario)?;
    let sol = solve(&lp, &SolverOptions::default())?;
    let rep = report(&scenario, &sol);

    println!("{name}: {}", sol.status);
    for row in &rep.sources {
        println!("  {:<11} {:>14} MWh", row.name, whole(row.production));
    }
    if let Some(t) = rep.totals {
        println!("  objective   {:>14}", whole(t.objective));
    }
    println!("  binding: {}", rep.binding.join(", "));
    Ok(())
}
