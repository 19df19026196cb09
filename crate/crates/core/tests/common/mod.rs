#![allow(dead_code)]

use gridmix::{Constraint, LinearProgram, Relation};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub const FUZZ_SEED: u64 = 20_261_018;
pub const FUZZ_CASES: usize = 1000;

/// Random dense LP with 1..=4 variables and 1..=8 rows. Coefficients are
/// whole numbers in [-10, 10] so degenerate and parallel rows show up often.
pub fn random_lp(rng: &mut StdRng) -> LinearProgram {
    let n = rng.gen_range(1..=4);
    let m = rng.gen_range(1..=8);
    let coef = |rng: &mut StdRng| rng.gen_range(-10..=10) as f64;
    let objective = (0..n).map(|_| coef(rng)).collect();
    let mut lp = if rng.gen_bool(0.5) {
        LinearProgram::minimize(objective)
    } else {
        LinearProgram::maximize(objective)
    };
    for i in 0..m {
        let row: Vec<f64> = loop {
            let row: Vec<f64> = (0..n).map(|_| coef(rng)).collect();
            if row.iter().any(|&a| a != 0.0) {
                break row;
            }
        };
        let rhs = rng.gen_range(-100..=100) as f64;
        let relation = match rng.gen_range(0..10) {
            0..=4 => Relation::Le,
            5..=8 => Relation::Ge,
            _ => Relation::Eq,
        };
        lp = lp.subject_to(Constraint::new(format!("r{i}"), row, relation, rhs));
    }
    lp
}

pub fn fuzz_programs() -> Vec<LinearProgram> {
    let mut rng = StdRng::seed_from_u64(FUZZ_SEED);
    (0..FUZZ_CASES).map(|_| random_lp(&mut rng)).collect()
}

pub fn rel_diff(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(1.0)
}
