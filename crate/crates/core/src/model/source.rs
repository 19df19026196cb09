use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{config, Result};

/// The three day slots used for demand and production.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PeriodName {
    /// 12am to 7am.
    EarlyMorning,
    /// 7am to 7pm.
    Daytime,
    /// 7pm to 12am.
    Evening,
}

impl PeriodName {
    pub const ALL: [PeriodName; 3] = [PeriodName::EarlyMorning, PeriodName::Daytime, PeriodName::Evening];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn as_str(self) -> &'static str {
        match self {
            PeriodName::EarlyMorning => "early_morning",
            PeriodName::Daytime => "daytime",
            PeriodName::Evening => "evening",
        }
    }

    pub fn hours(self) -> u32 {
        match self {
            PeriodName::EarlyMorning => 7,
            PeriodName::Daytime => 12,
            PeriodName::Evening => 5,
        }
    }
}

impl fmt::Display for PeriodName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DayPeriod {
    pub name: PeriodName,
    pub hours: u32,
    /// Share of the annual need that must be produced within this period.
    pub demand_fraction: f64,
}

impl DayPeriod {
    pub fn new(name: PeriodName, demand_fraction: f64) -> Self {
        Self {
            name,
            hours: name.hours(),
            demand_fraction,
        }
    }

    /// Early morning, daytime and evening with the given demand shares.
    pub fn standard(fractions: [f64; 3]) -> Vec<DayPeriod> {
        PeriodName::ALL
            .iter()
            .zip(fractions)
            .map(|(&name, f)| DayPeriod::new(name, f))
            .collect()
    }
}

/// One generation technology with its per-MWh rates.
///
/// Rates that are unknown for a technology are `None`; compiling a scenario
/// that needs a missing rate is a configuration error rather than a silent zero.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EnergySource {
    pub name: String,
    /// Levelized cost of energy, $/MWh.
    pub lcoe: f64,
    /// Levelized capital cost, $/MWh.
    #[serde(default)]
    pub capital_cost: Option<f64>,
    /// Levelized O&M and transmission cost, $/MWh.
    #[serde(default)]
    pub om_cost: Option<f64>,
    #[serde(rename = "emissions_g_per_mwh", default)]
    pub emissions: Option<f64>,
    #[serde(rename = "land_ft2_per_mwh", default)]
    pub land_use: Option<f64>,
    /// Annual output that needs no land (rooftop solar), MWh.
    #[serde(rename = "rooftop_allowance_mwh", default)]
    pub rooftop_allowance: f64,
    /// Share of annual output delivered in early morning, daytime and evening.
    /// Stored exactly as given; the three need not sum to one.
    #[serde(default)]
    pub period_fractions: Option<[f64; 3]>,
    #[serde(rename = "min_annual_output_mwh", default)]
    pub min_annual_output: f64,
}

impl EnergySource {
    pub fn new(name: impl Into<String>, lcoe: f64) -> Self {
        Self {
            name: name.into(),
            lcoe,
            capital_cost: None,
            om_cost: None,
            emissions: None,
            land_use: None,
            rooftop_allowance: 0.0,
            period_fractions: None,
            min_annual_output: 0.0,
        }
    }

    pub fn capital_cost(mut self, v: f64) -> Self {
        self.capital_cost = Some(v);
        self
    }

    pub fn om_cost(mut self, v: f64) -> Self {
        self.om_cost = Some(v);
        self
    }

    pub fn emissions(mut self, v: f64) -> Self {
        self.emissions = Some(v);
        self
    }

    pub fn land_use(mut self, v: f64) -> Self {
        self.land_use = Some(v);
        self
    }

    pub fn rooftop_allowance(mut self, v: f64) -> Self {
        self.rooftop_allowance = v;
        self
    }

    pub fn period_fractions(mut self, v: [f64; 3]) -> Self {
        self.period_fractions = Some(v);
        self
    }

    pub fn min_annual_output(mut self, v: f64) -> Self {
        self.min_annual_output = v;
        self
    }

    pub fn period_fraction(&self, period: PeriodName) -> Option<f64> {
        self.period_fractions.map(|f| f[period.index()])
    }

    /// Land occupied by `production` MWh, after the rooftop allowance.
    pub fn land_for(&self, production: f64) -> Option<f64> {
        self.land_use
            .map(|rate| rate * (production - self.rooftop_allowance).max(0.0))
    }

    pub fn validate(&self) -> Result<()> {
        let name = &self.name;
        if name.trim().is_empty() {
            return Err(config("energy source with an empty name"));
        }
        let rates = [
            ("lcoe", Some(self.lcoe)),
            ("capital_cost", self.capital_cost),
            ("om_cost", self.om_cost),
            ("emissions_g_per_mwh", self.emissions),
            ("land_ft2_per_mwh", self.land_use),
            ("rooftop_allowance_mwh", Some(self.rooftop_allowance)),
            ("min_annual_output_mwh", Some(self.min_annual_output)),
        ];
        for (key, v) in rates {
            if let Some(v) = v {
                if !v.is_finite() || v < 0.0 {
                    return Err(config(format!("source `{name}`: {key} must be finite and >= 0, got {v}")));
                }
            }
        }
        if let Some(f) = self.period_fractions {
            if let Some(bad) = f.iter().find(|v| !(0.0..=1.0).contains(*v)) {
                return Err(config(format!("source `{name}`: period fraction {bad} outside [0, 1]")));
            }
        }
        Ok(())
    }
}
