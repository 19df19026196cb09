use std::path::Path;

use gridmix::model::{load_scenario, merge_json, parse_scenario, CoefficientVariant, DemandMode, SpaceMode};
use gridmix::{builtin_scenario, builtin_scenarios, compile, solve, SolverOptions, Status};
use serde_json::json;

fn data(name: &str) -> std::path::PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/data").join(name)
}

#[test]
fn example_file_loads_with_defaults() {
    let s = load_scenario(data("harbor_town.json")).unwrap();
    assert_eq!(s.coefficient_variant, CoefficientVariant::AsPrinted);
    assert_eq!(s.demand_mode, DemandMode::PerPeriod);
    assert_eq!(s.space_mode, SpaceMode::SharedLand);
    assert_eq!(s.source("geothermal").unwrap().rooftop_allowance, 0.0);
    let sol = solve(&compile(&s).unwrap(), &SolverOptions::default()).unwrap();
    assert_eq!(sol.status, Status::Optimal);
}

#[test]
fn every_builtin_round_trips_through_json() {
    for s in builtin_scenarios() {
        let text = serde_json::to_string(&s).unwrap();
        let back = parse_scenario(&text, &s.name).unwrap();
        assert_eq!(back, s);
        assert_eq!(compile(&back).unwrap(), compile(&s).unwrap(), "{}", s.name);
    }
}

#[test]
fn overlay_merges_sources_by_name() {
    let base = builtin_scenario("m3_shared_space", CoefficientVariant::AsPrinted).unwrap();
    let mut v = serde_json::to_value(&base).unwrap();
    let overlay: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(data("cheap_solar.json")).unwrap()).unwrap();
    merge_json(&mut v, overlay);
    let merged = gridmix::model::scenario_from_value(v, "overlay").unwrap();
    assert_eq!(merged.name, "m3_cheap_solar");
    assert_eq!(merged.source("solar").unwrap().lcoe, 30.0);
    assert_eq!(merged.source("solar").unwrap().land_use, base.source("solar").unwrap().land_use);
    assert_eq!(merged.source("wind"), base.source("wind"));
    assert_eq!(merged.caps, base.caps);
}

#[test]
fn overlay_appends_new_sources_and_replaces_scalars() {
    let mut v = json!({"a": 1, "sources": [{"name": "wind", "lcoe": 1}], "caps": {"x": 1, "y": 2}});
    merge_json(
        &mut v,
        json!({"a": [3], "sources": [{"name": "tidal", "lcoe": 9}], "caps": {"y": 5}}),
    );
    assert_eq!(
        v,
        json!({"a": [3], "sources": [{"name": "wind", "lcoe": 1}, {"name": "tidal", "lcoe": 9}], "caps": {"x": 1, "y": 5}})
    );
}

#[test]
fn invalid_documents_are_rejected() {
    let good = std::fs::read_to_string(data("harbor_town.json")).unwrap();
    let cases = [
        good.replace("\"budget_usd\": 60000000", "\"budget_usd\": -1"),
        good.replace("\"hours\": 5", "\"hours\": 6"),
        good.replace("\"lcoe\": 39.61", "\"lcoe\": \"cheap\""),
        good.replace("\"name\": \"geothermal\"", "\"name\": \"wind\""),
        "{".to_string(),
    ];
    for (i, text) in cases.iter().enumerate() {
        assert!(parse_scenario(text, "case").is_err(), "case {i} accepted");
    }
    assert!(load_scenario(data("nope.json")).is_err());
}
