use super::{DemandMode, EnergySource, ObjectiveMode, Scenario, SpaceMode};
use crate::derivation::production_bound;
use crate::error::{config, Result};
use crate::lp::{Constraint, LinearProgram, Sense};
use crate::units::Unit;

fn rates(scenario: &Scenario, what: &str, get: impl Fn(&EnergySource) -> Option<f64>) -> Result<Vec<f64>> {
    scenario
        .sources
        .iter()
        .map(|s| {
            get(s).ok_or_else(|| {
                config(format!(
                    "scenario `{}`: source `{}` has no {what}",
                    scenario.name, s.name
                ))
            })
        })
        .collect()
}

/// Builds the linear program for `scenario`, one variable per source (annual
/// MWh) in source order.
///
/// Row order is fixed: demand (one row, or one per period), emissions,
/// budget, then space. Space rows depend on [`SpaceMode`]:
/// `SeparateBounds` bounds each rooftop source by the rooftop cap and each
/// land-based source by `floor(land_cap / land_rate)`; `SharedLand` emits a
/// single land row whose right-hand side is credited with every source's
/// rooftop allowance.
pub fn compile(scenario: &Scenario) -> Result<LinearProgram> {
    scenario.validate()?;
    let n = scenario.sources.len();

    let (objective, objective_unit) = match scenario.objective_mode {
        ObjectiveMode::Lcoe => (scenario.sources.iter().map(|s| s.lcoe).collect(), Unit::Usd),
        ObjectiveMode::OmOnly => (rates(scenario, "om_cost", |s| s.om_cost)?, Unit::Usd),
        ObjectiveMode::Emissions => (rates(scenario, "emissions rate", |s| s.emissions)?, Unit::GramsCo2),
    };

    let mut lp = LinearProgram::new(Sense::Minimize, objective)
        .with_names(scenario.sources.iter().map(|s| s.name.clone()))
        .with_lower_bounds(scenario.sources.iter().map(|s| s.min_annual_output).collect());
    lp.objective_unit = objective_unit;

    match scenario.demand_mode {
        DemandMode::FlatAnnual => {
            lp.constraints
                .push(Constraint::ge("demand", vec![1.0; n], scenario.annual_need).in_unit(Unit::Mwh));
        }
        DemandMode::PerPeriod => {
            for period in &scenario.periods {
                let coefficients = rates(scenario, "period_fractions", |s| s.period_fraction(period.name))?;
                lp.constraints.push(
                    Constraint::ge(
                        format!("demand_{}", period.name),
                        coefficients,
                        scenario.annual_need * period.demand_fraction,
                    )
                    .in_unit(Unit::Mwh),
                );
            }
        }
    }

    if let Some(cap) = scenario.caps.emissions_g {
        let coefficients = rates(scenario, "emissions rate", |s| s.emissions)?;
        lp.constraints
            .push(Constraint::le("emissions", coefficients, cap).in_unit(Unit::GramsCo2));
    }

    if let Some(cap) = scenario.caps.budget_usd {
        let coefficients = rates(scenario, "capital_cost", |s| s.capital_cost)?;
        lp.constraints
            .push(Constraint::le("budget", coefficients, cap).in_unit(Unit::Usd));
    }

    match scenario.space_mode {
        SpaceMode::SeparateBounds => {
            for (j, source) in scenario.sources.iter().enumerate() {
                let mut unit_row = vec![0.0; n];
                unit_row[j] = 1.0;
                if source.rooftop_allowance > 0.0 {
                    if let Some(cap) = scenario.caps.rooftop_mwh {
                        lp.constraints.push(
                            Constraint::le(format!("rooftop_{}", source.name), unit_row, cap).in_unit(Unit::Mwh),
                        );
                    }
                } else if let (Some(rate), Some(cap)) = (source.land_use, scenario.caps.land_ft2) {
                    let bound = production_bound(cap, rate)?;
                    lp.constraints.push(
                        Constraint::le(format!("land_{}", source.name), unit_row, bound).in_unit(Unit::Mwh),
                    );
                }
            }
        }
        SpaceMode::SharedLand => {
            let cap = scenario.caps.land_ft2.ok_or_else(|| {
                config(format!("scenario `{}`: shared land needs a land_ft2 cap", scenario.name))
            })?;
            let coefficients = rates(scenario, "land-use rate", |s| s.land_use)?;
            let rooftop_credit: f64 = scenario
                .sources
                .iter()
                .zip(&coefficients)
                .map(|(s, rate)| rate * s.rooftop_allowance)
                .sum();
            lp.constraints.push(
                Constraint::le("land", coefficients, cap + rooftop_credit).in_unit(Unit::SquareFeet),
            );
        }
    }

    lp.validate()?;
    Ok(lp)
}
