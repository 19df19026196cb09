use serde::Serialize;

use super::{CoefficientVariant, EnergySource, ObjectiveMode, PeriodName, Scenario};
use crate::lp::{Solution, Status};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SourceRow {
    pub name: String,
    /// Annual production, MWh.
    pub production: f64,
    /// `production * period_fraction` for early morning, daytime, evening.
    pub period_production: Option<[f64; 3]>,
    pub land_ft2: Option<f64>,
    pub emissions_g: Option<f64>,
    pub capital_usd: Option<f64>,
    /// This source's term of the objective, in the objective's unit.
    pub objective: Option<f64>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Totals {
    pub production: f64,
    pub land_ft2: f64,
    pub emissions_g: f64,
    pub capital_usd: f64,
    pub objective: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PeriodRow {
    pub period: PeriodName,
    pub production: f64,
    pub demand: f64,
    /// Production beyond the period's demand (negative when short).
    pub surplus: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScenarioReport {
    pub scenario: String,
    pub variant: CoefficientVariant,
    pub objective_mode: ObjectiveMode,
    pub status: Status,
    pub sources: Vec<SourceRow>,
    pub totals: Option<Totals>,
    pub periods: Vec<PeriodRow>,
    pub binding: Vec<String>,
    pub iterations: usize,
}

fn objective_rate(source: &EnergySource, mode: ObjectiveMode) -> Option<f64> {
    match mode {
        ObjectiveMode::Lcoe => Some(source.lcoe),
        ObjectiveMode::OmOnly => source.om_cost,
        ObjectiveMode::Emissions => source.emissions,
    }
}

/// Per-source and total rows for a solved scenario. A non-optimal solution
/// yields a report with its status and no rows.
pub fn report(scenario: &Scenario, solution: &Solution) -> ScenarioReport {
    let mut out = ScenarioReport {
        scenario: scenario.name.clone(),
        variant: scenario.coefficient_variant,
        objective_mode: scenario.objective_mode,
        status: solution.status,
        sources: Vec::new(),
        totals: None,
        periods: Vec::new(),
        binding: solution.binding.clone(),
        iterations: solution.iterations,
    };
    if solution.status != Status::Optimal || solution.values.len() != scenario.sources.len() {
        return out;
    }

    out.sources = scenario
        .sources
        .iter()
        .zip(&solution.values)
        .map(|(s, &x)| SourceRow {
            name: s.name.clone(),
            production: x,
            period_production: s.period_fractions.map(|f| f.map(|p| p * x)),
            land_ft2: s.land_for(x),
            emissions_g: s.emissions.map(|r| r * x),
            capital_usd: s.capital_cost.map(|r| r * x),
            objective: objective_rate(s, scenario.objective_mode).map(|r| r * x),
        })
        .collect();

    let sum = |f: fn(&SourceRow) -> Option<f64>| out.sources.iter().filter_map(f).sum::<f64>();
    out.totals = Some(Totals {
        production: out.sources.iter().map(|r| r.production).sum(),
        land_ft2: sum(|r| r.land_ft2),
        emissions_g: sum(|r| r.emissions_g),
        capital_usd: sum(|r| r.capital_usd),
        objective: sum(|r| r.objective),
    });

    if out.sources.iter().all(|r| r.period_production.is_some()) {
        out.periods = scenario
            .periods
            .iter()
            .map(|p| {
                let i = p.name.index();
                let production: f64 = out
                    .sources
                    .iter()
                    .filter_map(|r| r.period_production.map(|pp| pp[i]))
                    .sum();
                let demand = scenario.annual_need * p.demand_fraction;
                PeriodRow {
                    period: p.name,
                    production,
                    demand,
                    surplus: production - demand,
                }
            })
            .collect();
    }
    out
}
