//! Load a scenario from JSON, solve it, then layer an overlay onto a
//! built-in the way `gridmix solve --base` does.

use std::path::Path;

use gridmix::model::{load_scenario, merge_json, scenario_from_value, CoefficientVariant};
use gridmix::{builtin_scenario, compile, solve, SolverOptions};

fn main() -> gridmix::Result<()> {
    let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/data");
    let opts = SolverOptions::default();

    let town = load_scenario(data.join("harbor_town.json"))?;
    let sol = solve(&compile(&town)?, &opts)?;
    for (src, x) in town.sources.iter().zip(&sol.values) {
        println!("{:<11} {x:>12.0} MWh", src.name);
    }

    let mut doc = serde_json::to_value(builtin_scenario("m3_shared_space", CoefficientVariant::AsPrinted)?).unwrap();
    let overlay = std::fs::read_to_string(data.join("cheap_solar.json")).unwrap();
    merge_json(&mut doc, serde_json::from_str(&overlay).unwrap());
    let cheap = scenario_from_value(doc, "cheap_solar.json")?;
    let sol = solve(&compile(&cheap)?, &opts)?;
    println!("\n{}: objective {:.0}", cheap.name, sol.objective_value);
    Ok(())
}
