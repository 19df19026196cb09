//! Run the reproduction audit and list every row that does not match.

use gridmix::analysis::{reproduce_paper, DeltaClass};
use gridmix::format::percent;

fn main() -> gridmix::Result<()> {
    let audit = reproduce_paper()?;
    for row in audit.rows().filter(|r| r.observed != DeltaClass::Match) {
        let delta = row.relative_delta.map(percent).unwrap_or_else(|| "-".into());
        println!("[{}] {:<28} {:>10} {:?}: {}", row.table, row.item, delta, row.observed, row.note);
    }
    let strict = audit.failures(true).len();
    println!("\nclaimed matches hold: {}, strict failures: {strict}", audit.passes(false));
    Ok(())
}
