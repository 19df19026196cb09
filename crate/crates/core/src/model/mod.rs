//! Energy sources, planning scenarios and their compilation to linear programs.

mod catalog;
mod compile;
mod file;
mod report;
mod scenario;
mod source;

pub use catalog::{builtin_scenario, builtin_scenarios, describe, CATALOG_NAMES};
pub use compile::compile;
pub use file::{load_scenario, merge_json, parse_scenario, scenario_from_value};
pub use report::{report, PeriodRow, ScenarioReport, SourceRow, Totals};
pub use scenario::{
    CapName, Caps, CoefficientVariant, DemandMode, ObjectiveMode, Scenario, SpaceMode,
};
pub use source::{DayPeriod, EnergySource, PeriodName};
