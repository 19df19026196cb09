//! Recompute the scenario constants from raw inputs and show where they
//! drift from the printed figures.

use gridmix::derivation::{self, derive_all, inputs};
use gridmix::format::{human, percent};

fn main() -> gridmix::Result<()> {
    let all = derive_all();
    for c in &all.constants {
        let delta = c.relative_delta().map(percent).unwrap_or_default();
        println!("{:<34} {:>22} {:<10} {delta}", c.name, human(c.value), c.unit);
    }
    println!();
    for d in &all.deltas {
        println!("{:<50} {:>9}  {}", d.name, percent(d.relative_delta), d.note);
    }

    // The pieces compose: half the land budget, bounded for wind.
    let land = derivation::land_budget(inputs::STATE_AREA_FT2, inputs::UNOCCUPIED_FRACTION, inputs::WIND_DEDICATION / 2.0)?;
    let bound = derivation::production_bound(land, inputs::WIND_LAND_FT2_PER_MWH)?;
    println!("\nhalf the land: {} ft2 -> at most {} MWh of wind", human(land), human(bound));
    Ok(())
}
