use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{DayPeriod, EnergySource, PeriodName};
use crate::error::{config, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum ObjectiveMode {
    /// Minimize levelized cost of energy (build plus operate).
    #[default]
    Lcoe,
    /// Minimize operation and maintenance cost only.
    OmOnly,
    /// Minimize lifecycle CO2 emissions.
    Emissions,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum CoefficientVariant {
    /// Coefficients exactly as each model block states them.
    #[default]
    AsPrinted,
    /// Coefficients taken uniformly from the data tables and recomputed constants.
    TableDerived,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum DemandMode {
    /// A single annual demand row.
    #[default]
    FlatAnnual,
    /// One demand row per day period.
    PerPeriod,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum SpaceMode {
    /// One production bound per source: land-based sources by the land cap,
    /// rooftop sources by the rooftop cap.
    #[default]
    SeparateBounds,
    /// One combined land row; rooftop output is exempt.
    SharedLand,
}

/// Upper limits. An absent cap emits no row.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct Caps {
    #[serde(default)]
    pub emissions_g: Option<f64>,
    #[serde(default)]
    pub budget_usd: Option<f64>,
    #[serde(default)]
    pub land_ft2: Option<f64>,
    #[serde(default)]
    pub rooftop_mwh: Option<f64>,
}

/// Names of the scalar parameters that can be swept or overridden.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CapName {
    EmissionsG,
    BudgetUsd,
    LandFt2,
    RooftopMwh,
    AnnualNeedMwh,
}

impl CapName {
    pub const ALL: [CapName; 5] = [
        CapName::EmissionsG,
        CapName::BudgetUsd,
        CapName::LandFt2,
        CapName::RooftopMwh,
        CapName::AnnualNeedMwh,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CapName::EmissionsG => "emissions_g",
            CapName::BudgetUsd => "budget_usd",
            CapName::LandFt2 => "land_ft2",
            CapName::RooftopMwh => "rooftop_mwh",
            CapName::AnnualNeedMwh => "annual_need_mwh",
        }
    }
}

impl fmt::Display for CapName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CapName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CapName::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| {
                let known: Vec<_> = CapName::ALL.iter().map(|c| c.as_str()).collect();
                config(format!("unknown parameter `{s}` (expected one of {})", known.join(", ")))
            })
    }
}

/// A planning scenario: which sources compete, under which demand profile
/// and caps, for which objective.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub name: String,
    #[serde(default)]
    pub objective_mode: ObjectiveMode,
    #[serde(default)]
    pub coefficient_variant: CoefficientVariant,
    #[serde(rename = "annual_need_mwh")]
    pub annual_need: f64,
    #[serde(default)]
    pub demand_mode: DemandMode,
    #[serde(default)]
    pub periods: Vec<DayPeriod>,
    pub sources: Vec<EnergySource>,
    #[serde(default)]
    pub caps: Caps,
    #[serde(default)]
    pub space_mode: SpaceMode,
}

impl Scenario {
    pub fn source(&self, name: &str) -> Option<&EnergySource> {
        self.sources.iter().find(|s| s.name == name)
    }

    pub fn source_index(&self, name: &str) -> Option<usize> {
        self.sources.iter().position(|s| s.name == name)
    }

    pub fn source_mut(&mut self, name: &str) -> Option<&mut EnergySource> {
        self.sources.iter_mut().find(|s| s.name == name)
    }

    pub fn period(&self, name: PeriodName) -> Option<&DayPeriod> {
        self.periods.iter().find(|p| p.name == name)
    }

    pub fn with_objective(mut self, mode: ObjectiveMode) -> Self {
        self.objective_mode = mode;
        self
    }

    pub fn parameter(&self, which: CapName) -> Option<f64> {
        match which {
            CapName::EmissionsG => self.caps.emissions_g,
            CapName::BudgetUsd => self.caps.budget_usd,
            CapName::LandFt2 => self.caps.land_ft2,
            CapName::RooftopMwh => self.caps.rooftop_mwh,
            CapName::AnnualNeedMwh => Some(self.annual_need),
        }
    }

    /// Copy with one parameter replaced. Fails when the scenario has no such cap.
    pub fn with_parameter(&self, which: CapName, value: f64) -> Result<Self> {
        let mut s = self.clone();
        let slot = match which {
            CapName::EmissionsG => &mut s.caps.emissions_g,
            CapName::BudgetUsd => &mut s.caps.budget_usd,
            CapName::LandFt2 => &mut s.caps.land_ft2,
            CapName::RooftopMwh => &mut s.caps.rooftop_mwh,
            CapName::AnnualNeedMwh => {
                s.annual_need = value;
                return Ok(s);
            }
        };
        if slot.is_none() {
            return Err(config(format!("scenario `{}` has no `{which}` cap", self.name)));
        }
        *slot = Some(value);
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        let name = &self.name;
        if name.trim().is_empty() {
            return Err(config("scenario has an empty name"));
        }
        if self.sources.is_empty() {
            return Err(config(format!("scenario `{name}` has no energy sources")));
        }
        for (i, s) in self.sources.iter().enumerate() {
            s.validate()?;
            if self.sources[..i].iter().any(|o| o.name == s.name) {
                return Err(config(format!("scenario `{name}`: duplicate source `{}`", s.name)));
            }
        }
        if !self.annual_need.is_finite() || self.annual_need < 0.0 {
            return Err(config(format!("scenario `{name}`: annual need must be finite and >= 0")));
        }
        let caps = [
            ("emissions_g", self.caps.emissions_g),
            ("budget_usd", self.caps.budget_usd),
            ("land_ft2", self.caps.land_ft2),
            ("rooftop_mwh", self.caps.rooftop_mwh),
        ];
        for (key, cap) in caps {
            if let Some(v) = cap {
                if !v.is_finite() || v <= 0.0 {
                    return Err(config(format!("scenario `{name}`: cap {key} must be > 0, got {v}")));
                }
            }
        }
        for p in &self.periods {
            if !(0.0..=1.0).contains(&p.demand_fraction) {
                return Err(config(format!(
                    "scenario `{name}`: demand fraction of {} outside [0, 1]",
                    p.name
                )));
            }
        }
        if self.demand_mode == DemandMode::PerPeriod {
            let names: Vec<PeriodName> = self.periods.iter().map(|p| p.name).collect();
            if names != PeriodName::ALL {
                return Err(config(format!(
                    "scenario `{name}`: per-period demand needs periods early_morning, daytime, evening in that order"
                )));
            }
            let hours: u32 = self.periods.iter().map(|p| p.hours).sum();
            if hours != 24 {
                return Err(config(format!("scenario `{name}`: period hours sum to {hours}, not 24")));
            }
            if let Some(s) = self.sources.iter().find(|s| s.period_fractions.is_none()) {
                return Err(config(format!(
                    "scenario `{name}`: source `{}` has no period_fractions",
                    s.name
                )));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn minimal() -> Scenario {
        Scenario {
            name: "t".into(),
            objective_mode: ObjectiveMode::Lcoe,
            coefficient_variant: CoefficientVariant::AsPrinted,
            annual_need: 10.0,
            demand_mode: DemandMode::FlatAnnual,
            periods: Vec::new(),
            sources: vec![EnergySource::new("a", 1.0)],
            caps: Caps::default(),
            space_mode: SpaceMode::SeparateBounds,
        }
    }

    #[test]
    fn parameter_override_requires_existing_cap() {
        let s = minimal();
        assert!(s.with_parameter(CapName::LandFt2, 5.0).is_err());
        let mut with_cap = s.clone();
        with_cap.caps.land_ft2 = Some(1.0);
        assert_eq!(
            with_cap.with_parameter(CapName::LandFt2, 5.0).unwrap().caps.land_ft2,
            Some(5.0)
        );
        assert_eq!(s.with_parameter(CapName::AnnualNeedMwh, 3.0).unwrap().annual_need, 3.0);
    }

    #[test]
    fn per_period_needs_fractions() {
        let mut s = minimal();
        s.demand_mode = DemandMode::PerPeriod;
        s.periods = DayPeriod::standard([0.3, 0.5, 0.2]);
        assert!(s.validate().is_err());
        s.sources[0].period_fractions = Some([0.3, 0.5, 0.2]);
        assert!(s.validate().is_ok());
        s.periods.swap(0, 1);
        assert!(s.validate().is_err());
    }

    #[test]
    fn caps_must_be_positive() {
        let mut s = minimal();
        s.caps.budget_usd = Some(0.0);
        assert!(s.validate().is_err());
    }

    #[test]
    fn cap_names_parse() {
        assert_eq!("land_ft2".parse::<CapName>().unwrap(), CapName::LandFt2);
        assert!("land".parse::<CapName>().is_err());
    }
}
