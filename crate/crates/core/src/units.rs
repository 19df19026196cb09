use std::fmt;

use serde::{Deserialize, Serialize};

/// Physical unit carried by a constraint right-hand side or an objective.
///
/// Coefficients are rates "unit per MWh", so a row is coherent when the
/// numerator of its coefficients matches the unit of its right-hand side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Unit {
    #[default]
    Dimensionless,
    Mwh,
    GramsCo2,
    Usd,
    SquareFeet,
}

impl Unit {
    pub fn symbol(self) -> &'static str {
        match self {
            Unit::Dimensionless => "1",
            Unit::Mwh => "MWh",
            Unit::GramsCo2 => "g CO2",
            Unit::Usd => "USD",
            Unit::SquareFeet => "ft2",
        }
    }
}

impl fmt::Display for Unit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}
