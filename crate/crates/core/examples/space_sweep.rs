//! Sweep the land cap of the nuclear scenario and watch nuclear output fall
//! as space opens up.

use gridmix::analysis::{linspace, sweep};
use gridmix::format::whole;
use gridmix::model::{CapName, CoefficientVariant};
use gridmix::{builtin_scenario, SolverOptions};

fn main() -> gridmix::Result<()> {
    let s = builtin_scenario("m4_nuclear", CoefficientVariant::AsPrinted)?;
    let nuclear = s.source_index("nuclear").expect("nuclear source");
    let values = linspace(2.06e8, 5.06e10, 20)?;
    for p in sweep(&s, CapName::LandFt2, &values, &SolverOptions::default())? {
        let x = p.solution.values.get(nuclear).copied().unwrap_or(f64::NAN);
        println!("{:>16} ft2  {:<10} nuclear {:>12} MWh", whole(p.value), p.solution.status, whole(x));
    }
    Ok(())
}
