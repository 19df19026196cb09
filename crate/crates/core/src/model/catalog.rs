use super::{
    Caps, CoefficientVariant, DayPeriod, DemandMode, EnergySource, ObjectiveMode, Scenario, SpaceMode,
};
use crate::derivation::{derive_all, inputs, DerivedConstants};
use crate::error::{Error, Result};

pub const CATALOG_NAMES: [&str; 9] = [
    "m0_cost_only",
    "m1_flat_demand",
    "m2_period_demand",
    "m3_shared_space",
    "m4_nuclear",
    "m4_tight_space",
    "m5_geothermal",
    "a1_om_objective",
    "b1_min_emissions",
];

/// One-line description of a built-in scenario.
pub fn describe(name: &str) -> Option<&'static str> {
    Some(match name {
        "m0_cost_only" => "six sources, demand row only",
        "m1_flat_demand" => "wind and solar, annual demand, emissions/budget/space caps",
        "m2_period_demand" => "wind and solar, demand split over three day periods",
        "m3_shared_space" => "period demand, solar allowed on the ground (shared land row)",
        "m4_nuclear" => "adds nuclear with a small-reactor output floor",
        "m4_tight_space" => "nuclear model with land capped at 205,898,600 ft2",
        "m5_geothermal" => "wind, solar and geothermal",
        "a1_om_objective" => "shared-space model minimizing O&M cost only",
        "b1_min_emissions" => "shared-space model minimizing emissions under an LCOE budget",
        _ => return None,
    })
}

const PRINTED_ANNUAL_NEED: f64 = 25_621_059.0;
const PRINTED_EMISSIONS_CAP: f64 = 3.578e12;
const BUDGET: f64 = 2e9;
const LAND: f64 = 50_589_860_000.0;
const TIGHT_LAND: f64 = 205_898_600.0;
const ROOFTOP: f64 = 344_900.0;

/// Constants that differ between the two coefficient variants.
struct Basis {
    variant: CoefficientVariant,
    annual_need: f64,
    emissions_cap: f64,
    land: f64,
    rooftop: f64,
    wind_early: f64,
    solar_fractions: [f64; 3],
    geothermal_fractions: [f64; 3],
    smr_floor: f64,
}

impl Basis {
    fn new(variant: CoefficientVariant) -> Self {
        match variant {
            CoefficientVariant::AsPrinted => Self {
                variant,
                annual_need: PRINTED_ANNUAL_NEED,
                emissions_cap: PRINTED_EMISSIONS_CAP,
                land: LAND,
                rooftop: ROOFTOP,
                wind_early: 0.3760,
                solar_fractions: [0.01, 0.9797, 0.01],
                geothermal_fractions: [0.2916, 0.5, 0.21],
                smr_floor: 2_628_000.0,
            },
            CoefficientVariant::TableDerived => {
                let d: DerivedConstants = derive_all();
                Self {
                    variant,
                    annual_need: d.value("annual_need"),
                    emissions_cap: d.value("emissions_cap_g"),
                    land: d.value("land_budget_ft2"),
                    rooftop: d.value("rooftop_production_bound_mwh"),
                    wind_early: 0.3769,
                    solar_fractions: [0.0101, 0.9797, 0.0101],
                    geothermal_fractions: [0.2916, 0.5, 0.2083],
                    smr_floor: d.value("smr_min_output_mwh"),
                }
            }
        }
    }

    fn printed(&self) -> bool {
        self.variant == CoefficientVariant::AsPrinted
    }

    fn wind(&self) -> EnergySource {
        EnergySource::new("wind", 37.80)
            .capital_cost(27.45)
            .om_cost(10.35)
            .emissions(4970.0)
            .land_use(inputs::WIND_LAND_FT2_PER_MWH)
            .period_fractions([self.wind_early, 0.3775, 0.2456])
    }

    fn solar(&self, rooftop_allowance: f64) -> EnergySource {
        EnergySource::new("solar", 58.62)
            .capital_cost(39.12)
            .om_cost(19.51)
            .emissions(45_000.0)
            .land_use(inputs::SOLAR_LAND_FT2_PER_MWH)
            .rooftop_allowance(rooftop_allowance)
            .period_fractions(self.solar_fractions)
    }

    fn nuclear(&self) -> EnergySource {
        EnergySource::new("nuclear", 96.2)
            .capital_cost(70.8)
            .emissions(49_000.0)
            .land_use(3.23)
            .period_fractions([0.29, 0.5, 0.21])
            .min_annual_output(self.smr_floor)
    }

    fn geothermal(&self) -> EnergySource {
        EnergySource::new("geothermal", 39.61)
            .capital_cost(21.8)
            .emissions(38_000.0)
            .land_use(9.6875)
            .period_fractions(self.geothermal_fractions)
    }

    fn periods(&self) -> Vec<DayPeriod> {
        DayPeriod::standard(inputs::DEMAND_FRACTIONS)
    }

    fn base(&self, name: &str, sources: Vec<EnergySource>, caps: Caps) -> Scenario {
        Scenario {
            name: name.to_string(),
            objective_mode: ObjectiveMode::Lcoe,
            coefficient_variant: self.variant,
            annual_need: self.annual_need,
            demand_mode: DemandMode::PerPeriod,
            periods: self.periods(),
            sources,
            caps,
            space_mode: SpaceMode::SharedLand,
        }
    }

    fn flat(&self, name: &str) -> Scenario {
        let mut s = self.base(
            name,
            vec![self.wind(), self.solar(self.rooftop)],
            Caps {
                emissions_g: Some(self.emissions_cap),
                budget_usd: Some(BUDGET),
                land_ft2: Some(self.land),
                rooftop_mwh: Some(self.rooftop),
            },
        );
        s.demand_mode = DemandMode::FlatAnnual;
        s.space_mode = SpaceMode::SeparateBounds;
        s
    }

    fn shared(&self, name: &str, rooftop_allowance: f64, emissions_cap: f64) -> Scenario {
        self.base(
            name,
            vec![self.wind(), self.solar(rooftop_allowance)],
            Caps {
                emissions_g: Some(emissions_cap),
                budget_usd: Some(BUDGET),
                land_ft2: Some(self.land),
                rooftop_mwh: None,
            },
        )
    }

    fn scenario(&self, name: &str) -> Option<Scenario> {
        let printed = self.printed();
        let shared_rooftop = if printed { 2_190_438.0 } else { self.rooftop };
        let later_rooftop = if printed { 10_279_088.0 } else { self.rooftop };
        Some(match name {
            "m0_cost_only" => {
                let sources = [
                    ("wind", 37.80),
                    ("solar", 58.62),
                    ("nuclear", 96.2),
                    ("geothermal", 39.61),
                    ("gas", 37.50),
                    ("hydro", 63.9),
                ]
                .into_iter()
                .map(|(n, c)| EnergySource::new(n, c))
                .collect();
                let mut s = self.base(name, sources, Caps::default());
                s.demand_mode = DemandMode::FlatAnnual;
                s.space_mode = SpaceMode::SeparateBounds;
                s
            }
            "m1_flat_demand" => self.flat(name),
            "m2_period_demand" => {
                let mut s = self.flat(name);
                s.demand_mode = DemandMode::PerPeriod;
                s
            }
            "m3_shared_space" => {
                let cap = if printed { 16_325e9 } else { self.emissions_cap };
                self.shared(name, shared_rooftop, cap)
            }
            "m4_nuclear" | "m4_tight_space" => {
                let cap = if printed { 163_325e9 } else { self.emissions_cap };
                let mut s = self.shared(name, later_rooftop, cap);
                if printed {
                    // The nuclear model block carries the table's early-morning wind share.
                    s.sources[0].period_fractions = Some([0.3769, 0.3775, 0.2456]);
                }
                s.sources.push(self.nuclear());
                if name == "m4_tight_space" {
                    s.caps.land_ft2 = Some(TIGHT_LAND);
                }
                s
            }
            "m5_geothermal" => {
                let mut s = self.shared(name, later_rooftop, self.emissions_cap);
                if printed {
                    s.sources[0].period_fractions = Some([0.3769, 0.3775, 0.2456]);
                    s.sources[0].lcoe = 73.7;
                    s.sources[1].lcoe = 55.8;
                }
                s.sources.push(self.geothermal());
                s
            }
            "a1_om_objective" => {
                let cap = if printed { 16_325e9 } else { self.emissions_cap };
                self.shared(name, shared_rooftop, cap)
                    .with_objective(ObjectiveMode::OmOnly)
            }
            "b1_min_emissions" => {
                let mut s = self.shared(name, shared_rooftop, self.emissions_cap);
                s.caps.emissions_g = None;
                for src in &mut s.sources {
                    src.capital_cost = Some(src.lcoe);
                }
                s.with_objective(ObjectiveMode::Emissions)
            }
            _ => return None,
        })
    }
}

/// A built-in scenario in the requested coefficient variant.
pub fn builtin_scenario(name: &str, variant: CoefficientVariant) -> Result<Scenario> {
    Basis::new(variant)
        .scenario(name)
        .ok_or_else(|| Error::UnknownScenario(name.to_string()))
}

/// The whole catalog, each scenario in both variants (as-printed first).
pub fn builtin_scenarios() -> Vec<Scenario> {
    [CoefficientVariant::AsPrinted, CoefficientVariant::TableDerived]
        .into_iter()
        .flat_map(|v| {
            let basis = Basis::new(v);
            CATALOG_NAMES.map(|n| basis.scenario(n).expect("catalog name"))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lp::{solve, SolverOptions, Status};
    use crate::model::compile;

    fn get(name: &str, v: CoefficientVariant) -> Scenario {
        builtin_scenario(name, v).unwrap()
    }

    #[test]
    fn catalog_has_both_variants_of_every_name() {
        let all = builtin_scenarios();
        assert_eq!(all.len(), 2 * CATALOG_NAMES.len());
        for name in CATALOG_NAMES {
            assert!(describe(name).is_some());
            for v in [CoefficientVariant::AsPrinted, CoefficientVariant::TableDerived] {
                assert!(all.iter().any(|s| s.name == name && s.coefficient_variant == v));
            }
        }
        assert!(matches!(
            builtin_scenario("nope", CoefficientVariant::AsPrinted),
            Err(Error::UnknownScenario(_))
        ));
    }

    #[test]
    fn m1_shape() {
        let lp = compile(&get("m1_flat_demand", CoefficientVariant::AsPrinted)).unwrap();
        assert_eq!(lp.var_count(), 2);
        assert_eq!(lp.constraints.len(), 5);
        assert_eq!(lp.constraint("demand").unwrap().rhs, 25_621_059.0);
    }

    #[test]
    fn m2_variants_differ_in_early_wind() {
        let early = |v| {
            compile(&get("m2_period_demand", v)).unwrap().constraint("demand_early_morning").unwrap().coefficients[0]
        };
        assert_eq!(early(CoefficientVariant::AsPrinted), 0.3760);
        assert_eq!(early(CoefficientVariant::TableDerived), 0.3769);
    }

    #[test]
    fn m3_land_row() {
        let lp = compile(&get("m3_shared_space", CoefficientVariant::AsPrinted)).unwrap();
        let land = lp.constraint("land").unwrap();
        assert_eq!(land.coefficients, vec![1065.6, 204.5]);
        assert_eq!(land.rhs, 50_589_860_000.0 + 204.5 * 2_190_438.0);
    }

    #[test]
    fn m4_nuclear_bound_and_daytime() {
        let lp = compile(&get("m4_nuclear", CoefficientVariant::AsPrinted)).unwrap();
        assert_eq!(lp.lower_bounds[2], 2_628_000.0);
        assert_eq!(lp.constraint("demand_daytime").unwrap().coefficients[2], 0.5);
        let tight = get("m4_tight_space", CoefficientVariant::AsPrinted);
        assert_eq!(tight.caps.land_ft2, Some(205_898_600.0));
    }

    #[test]
    fn m0_all_gas() {
        let s = get("m0_cost_only", CoefficientVariant::AsPrinted);
        let sol = solve(&compile(&s).unwrap(), &SolverOptions::default()).unwrap();
        let gas = s.source_index("gas").unwrap();
        assert_eq!(sol.values[gas], 25_621_059.0);
        assert_eq!(sol.values.iter().sum::<f64>(), 25_621_059.0);
    }

    #[test]
    fn catalog_smoke() {
        for s in builtin_scenarios() {
            let sol = solve(&compile(&s).unwrap(), &SolverOptions::default()).unwrap();
            let expected = if s.name == "m4_tight_space" && s.coefficient_variant == CoefficientVariant::TableDerived {
                Status::Infeasible
            } else {
                Status::Optimal
            };
            assert_eq!(sol.status, expected, "{} {:?}", s.name, s.coefficient_variant);
        }
    }
}
