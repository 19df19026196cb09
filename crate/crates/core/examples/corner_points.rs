//! Evaluate the O&M and LCOE objectives at every corner of the two-source
//! system and see that both pick the same vertex.

use gridmix::analysis::{corner_objectives, corner_report, corner_system};
use gridmix::format::whole;

fn main() -> gridmix::Result<()> {
    let rep = corner_report(&corner_system(), &corner_objectives())?;
    println!("{:>12} {:>12} {:>16} {:>16}", "wind", "solar", rep.objectives[0], rep.objectives[1]);
    for (v, vals) in rep.vertices.iter().zip(&rep.values) {
        println!(
            "{:>12} {:>12} {:>16} {:>16}",
            whole(v.point[0]),
            whole(v.point[1]),
            whole(vals[0]),
            whole(vals[1])
        );
    }
    for (name, best) in rep.objectives.iter().zip(&rep.argmin) {
        println!("{name} minimized at vertex {best:?}");
    }
    println!("shared minimizer: {}", rep.shared_argmin);
    Ok(())
}
