//! Acceptance harness. One PASS/FAIL line per criterion; exits nonzero when
//! any criterion fails.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use gridmix::analysis::{corner_objectives, corner_report, corner_system, linspace, oracle_solve, reproduce_paper, sweep, DeltaClass, MAX_VARS};
use gridmix::derivation::{self, derive_all};
use gridmix::lp::check_feasible;
use gridmix::model::{CapName, CoefficientVariant, Scenario};
use gridmix::{builtin_scenario, builtin_scenarios, compile, report, solve, Solution, SolverOptions, Status};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn printed(name: &str) -> Scenario {
    builtin_scenario(name, CoefficientVariant::AsPrinted).unwrap()
}

fn run(s: &Scenario) -> Solution {
    solve(&compile(s).unwrap(), &SolverOptions::default()).unwrap()
}

/// Fastest of a few timed runs, so one scheduler hiccup does not decide the verdict.
fn timed(s: &Scenario) -> (Solution, Duration) {
    let mut best = Duration::MAX;
    let mut sol = None;
    for _ in 0..5 {
        let t = Instant::now();
        let r = run(s);
        best = best.min(t.elapsed());
        sol = Some(r);
    }
    (sol.unwrap(), best)
}

fn rel(ours: f64, published: f64) -> f64 {
    (ours - published).abs() / published.abs()
}

fn m1_demand_vertex() -> Outcome {
    let (sol, t) = timed(&printed("m1_flat_demand"));
    ensure(sol.status == Status::Optimal, || format!("status {}", sol.status))?;
    ensure(sol.values[0] == 25_621_059.0 && sol.values[1] == 0.0, || format!("x = {:?}", sol.values))?;
    let gap = (sol.objective_value - 968_476_030.0).abs();
    ensure(gap <= 1000.0, || format!("objective off by ${gap:.0}"))?;
    ensure(t < Duration::from_millis(10), || format!("took {t:?}"))?;
    Ok(format!("x = (25,621,059, 0), objective {:.0}, {t:?}", sol.objective_value))
}

fn m0_all_gas() -> Outcome {
    let s = printed("m0_cost_only");
    let (sol, t) = timed(&s);
    let total: f64 = sol.values.iter().sum();
    let gas = s.sources.iter().position(|src| src.lcoe == 37.50).ok_or("no 37.50 $/MWh source")?;
    ensure(sol.values[gas] / total == 1.0, || format!("gas share {}", sol.values[gas] / total))?;
    ensure(sol.values.iter().enumerate().all(|(j, v)| j == gas || *v == 0.0), || format!("{:?}", sol.values))?;
    ensure(t < Duration::from_millis(10), || format!("took {t:?}"))?;
    Ok(format!("100% on {} of {} sources, {t:?}", s.sources[gas].name, s.sources.len()))
}

fn m2_rooftop_binding() -> Outcome {
    let s = printed("m2_period_demand");
    let lp = compile(&s).unwrap();
    let sol = run(&s);
    ensure(sol.status == Status::Optimal, || format!("status {}", sol.status))?;
    ensure(check_feasible(&lp, &sol.values, 1e-7).feasible, || "optimum infeasible".into())?;
    ensure((sol.values[1] - 344_900.0).abs() <= 1e-6, || format!("solar {}", sol.values[1]))?;
    let d = rel(sol.objective_value, 1_309_379_704.0);
    ensure(d <= 0.005, || format!("objective delta {:.3}%", d * 100.0))?;
    let audit = reproduce_paper().map_err(|e| e.to_string())?;
    let row = audit.row("7", "objective").ok_or("audit lacks the m2 objective row")?;
    ensure(row.observed != DeltaClass::Match && !row.note.is_empty(), || "m2 delta not ledgered".into())?;
    Ok(format!("solar 344,900, objective delta {:.3}%, ledgered", d * 100.0))
}

fn m3_beats_m2() -> Outcome {
    let m3 = run(&printed("m3_shared_space"));
    let m2 = run(&printed("m2_period_demand"));
    let d = rel(m3.objective_value, 1_168_449_731.0);
    ensure(d <= 0.01, || format!("objective delta {:.3}%", d * 100.0))?;
    ensure(m3.objective_value < m2.objective_value, || "m3 not below m2".into())?;
    Ok(format!(
        "delta {:.3}%, {:.0} below m2",
        d * 100.0,
        m2.objective_value - m3.objective_value
    ))
}

fn m4_nuclear() -> Outcome {
    let mut relaxed = printed("m4_nuclear");
    relaxed.source_mut("nuclear").unwrap().min_annual_output = 0.0;
    let r = run(&relaxed);
    let k = relaxed.source_index("nuclear").unwrap();
    ensure(r.status == Status::Optimal && r.values[k] == 0.0, || format!("relaxed nuclear {}", r.values[k]))?;

    let tight = printed("m4_tight_space");
    let t = run(&tight);
    ensure(t.status == Status::Optimal && t.values[k] > 0.0, || format!("tight nuclear {:?}", t.values))?;
    let cap = tight.caps.land_ft2.unwrap();
    ensure(cap == 205_898_600.0, || format!("tight cap {cap}"))?;
    // Land as the model defines it: the shared row's left side less the
    // rooftop credit folded into its right-hand side.
    let row = compile(&tight).unwrap().constraint("land").cloned().ok_or("no land row")?;
    let land = row.activity(&t.values) - (row.rhs - cap);
    ensure(land <= cap * (1.0 + 1e-9), || format!("land {land} over cap {cap}"))?;
    let ground = report(&tight, &t).totals.unwrap().land_ft2;

    let values = linspace(2.06e8, 5.06e10, 20).unwrap();
    let pts = sweep(&printed("m4_nuclear"), CapName::LandFt2, &values, &SolverOptions::default()).unwrap();
    for w in pts.windows(2) {
        let (a, b) = (w[0].solution.values[k], w[1].solution.values[k]);
        ensure(b <= a + 1e-6 * a, || format!("nuclear rose {a} -> {b}"))?;
    }
    Ok(format!(
        "relaxed x3 = 0, tight x3 = {:.0}, model land {:.0} <= cap, physical ground {:.0} since unused rooftop credit offsets wind land, 20-point sweep nonincreasing",
        t.values[k], land, ground
    ))
}

fn m5_structure() -> Outcome {
    let s = printed("m5_geothermal");
    let sol = run(&s);
    let (w, sol_i, g) = (
        s.source_index("wind").unwrap(),
        s.source_index("solar").unwrap(),
        s.source_index("geothermal").unwrap(),
    );
    ensure(sol.status == Status::Optimal, || format!("status {}", sol.status))?;
    ensure(sol.values[sol_i] == 0.0, || format!("solar {}", sol.values[sol_i]))?;
    ensure(sol.values[g] > sol.values[w], || format!("{:?}", sol.values))?;
    let audit = reproduce_paper().map_err(|e| e.to_string())?;
    let t = audit.table("10").ok_or("no m5 audit")?;
    ensure(t.printed_point_is_vertex == Some(false), || "printed point claimed as a vertex".into())?;
    ensure(
        t.rows.iter().any(|r| r.expected == DeltaClass::Ledger),
        || "printed numbers not ledger-flagged".into(),
    )?;
    Ok(format!("solar 0, geothermal {:.0} > wind {:.0}, printed point ledgered", sol.values[g], sol.values[w]))
}

fn corner_points() -> Outcome {
    let rep = corner_report(&corner_system(), &corner_objectives()).map_err(|e| e.to_string())?;
    ensure(rep.shared_argmin, || "objectives pick different vertices".into())?;
    let om = &rep.argmin[rep.objectives.iter().position(|o| o == "om").unwrap()];
    let lcoe = &rep.argmin[rep.objectives.iter().position(|o| o == "lcoe").unwrap()];
    let b = *om.iter().find(|v| lcoe.contains(v)).ok_or("no common argmin")?;
    let (vo, vl) = (rep.value(b, "om").unwrap(), rep.value(b, "lcoe").unwrap());
    ensure(rel(vo, 333_464_655.0) <= 1e-3, || format!("om at B {vo}"))?;
    ensure(rel(vl, 1_168_449_731.0) <= 1e-3, || format!("lcoe at B {vl}"))?;
    Ok(format!(
        "B: om {:.0} ({:.3}%), lcoe {:.0} ({:.3}%), shared argmin",
        vo,
        rel(vo, 333_464_655.0) * 100.0,
        vl,
        rel(vl, 1_168_449_731.0) * 100.0
    ))
}

fn emissions_objective() -> Outcome {
    let mut notes = Vec::new();
    for variant in [CoefficientVariant::AsPrinted, CoefficientVariant::TableDerived] {
        let s = builtin_scenario("b1_min_emissions", variant).unwrap();
        let sol = run(&s);
        ensure(sol.status == Status::Optimal, || format!("status {}", sol.status))?;
        ensure(sol.values[1] == 0.0 && sol.values[0] > 0.0, || format!("{:?}", sol.values))?;
        notes.push(format!("{:.0}", sol.values[0]));
    }
    Ok(format!("wind only ({} MWh)", notes.join(" / ")))
}

fn derivation_regression() -> Outcome {
    use derivation::inputs::*;
    // independent arithmetic, compared against the printed figures
    let oracle_need = STATE_TOTAL_2021_MWH * ADJUSTED_SHARE * (1.0 - CLEAN_SHARES.iter().sum::<f64>());
    let oracle_land = STATE_AREA_FT2 * UNOCCUPIED_FRACTION / 15.0;
    let oracle_baseline = STATE_TOTAL_2021_MWH * ADJUSTED_SHARE * [COAL, GAS, OIL, BIOMASS].iter().map(|(f, g)| f * g).sum::<f64>();
    let lib_need = derivation::annual_need(
        STATE_TOTAL_2021_MWH,
        ADJUSTED_SHARE,
        derivation::non_clean_fraction(&CLEAN_SHARES).unwrap(),
    )
    .unwrap();
    let checks: [(&str, f64, f64, f64); 7] = [
        ("annual_need", lib_need, oracle_need, 25_621_059.0),
        (
            "land_budget",
            derivation::land_budget(STATE_AREA_FT2, UNOCCUPIED_FRACTION, WIND_DEDICATION).unwrap(),
            oracle_land,
            50_589_860_000.0,
        ),
        (
            "production_bound wind",
            derivation::production_bound(50_589_860_000.0, 1065.6).unwrap(),
            (50_589_860_000.0f64 / 1065.6).floor(),
            47_475_469.0,
        ),
        (
            "production_bound rooftop",
            derivation::production_bound(ROOFTOP_AREA_FT2, 204.5).unwrap(),
            (ROOFTOP_AREA_FT2 / 204.5).floor(),
            344_900.0,
        ),
        (
            "period_rhs daytime",
            derivation::period_rhs(lib_need, 0.5149).unwrap(),
            oracle_need * 0.5149,
            13_192_000.0,
        ),
        (
            "period_rhs early_morning",
            derivation::period_rhs(lib_need, 0.2759).unwrap(),
            oracle_need * 0.2759,
            7_069_000.0,
        ),
        (
            "baseline_emissions",
            derivation::baseline_emissions(&[COAL, GAS, OIL, BIOMASS], STATE_TOTAL_2021_MWH * ADJUSTED_SHARE).unwrap(),
            oracle_baseline,
            17_830_000_000_000.0,
        ),
    ];
    let mut worst = 0.0f64;
    for (name, lib, oracle, published) in checks {
        ensure(rel(lib, oracle) <= 1e-12, || format!("{name}: library {lib} vs oracle {oracle}"))?;
        let d = rel(lib, published);
        ensure(d <= 0.005, || format!("{name}: {lib} vs printed {published} ({:.3}%)", d * 100.0))?;
        worst = worst.max(d);
    }
    let all = derive_all();
    let cap = all.delta("emissions_cap_g").ok_or("emissions cap missing from the delta table")?;
    ensure(
        (cap.derived - 3.565e12).abs() < 1e9 && cap.printed == 3.578e12,
        || format!("cap row {} vs {}", cap.derived, cap.printed),
    )?;
    Ok(format!("7 constants within {:.3}%, emissions cap delta {:.3}% ledgered", worst * 100.0, cap.relative_delta * 100.0))
}

fn oracle_equivalence(started: Instant) -> Outcome {
    let opts = SolverOptions::default();
    let mut certified = 0;
    let mut closed_form = Vec::new();
    for s in builtin_scenarios() {
        let lp = compile(&s).unwrap();
        let sol = solve(&lp, &opts).unwrap();
        if lp.var_count() > MAX_VARS {
            // Too wide for enumeration. Demand-only programs have a closed-form
            // optimum: everything on the cheapest source.
            ensure(lp.constraints.len() == 1, || format!("{} is too wide and not demand-only", s.name))?;
            let cheapest = lp.objective.iter().cloned().fold(f64::INFINITY, f64::min);
            let expected = cheapest * lp.constraints[0].rhs;
            ensure(
                sol.status == Status::Optimal && common::rel_diff(sol.objective_value, expected) <= 1e-6,
                || format!("{}: {} vs closed form {expected}", s.name, sol.objective_value),
            )?;
            closed_form.push(s.name.clone());
            continue;
        }
        let o = oracle_solve(&lp).map_err(|e| e.to_string())?;
        ensure(o.status == sol.status, || format!("{}: {} vs oracle {}", s.name, sol.status, o.status))?;
        if let Some(v) = o.objective {
            ensure(
                common::rel_diff(sol.objective_value, v) <= 1e-6,
                || format!("{}: {} vs oracle {v}", s.name, sol.objective_value),
            )?;
        }
        certified += 1;
    }
    let programs = common::fuzz_programs();
    for (i, lp) in programs.iter().enumerate() {
        let sol = solve(lp, &opts).map_err(|e| format!("fuzz {i}: {e}"))?;
        let o = oracle_solve(lp).map_err(|e| e.to_string())?;
        ensure(o.status == sol.status, || format!("fuzz {i}: {} vs oracle {}", sol.status, o.status))?;
        if let Some(v) = o.objective {
            ensure(
                common::rel_diff(sol.objective_value, v) <= 1e-6,
                || format!("fuzz {i}: {} vs oracle {v}", sol.objective_value),
            )?;
        }
    }
    let elapsed = started.elapsed();
    ensure(elapsed < Duration::from_secs(60), || format!("harness took {elapsed:?}"))?;
    closed_form.dedup();
    Ok(format!(
        "{certified} catalog programs by enumeration, {} by closed form, {} fuzzed LPs agree, {elapsed:.2?} total",
        closed_form.join(", "),
        programs.len()
    ))
}

fn main() -> ExitCode {
    let started = Instant::now();
    let criteria: [Criterion; 9] = [
        ("m1 demand vertex", m1_demand_vertex),
        ("m0 all production on gas", m0_all_gas),
        ("m2 rooftop bound binding", m2_rooftop_binding),
        ("m3 within 1% and below m2", m3_beats_m2),
        ("m4 nuclear floor and land sweep", m4_nuclear),
        ("m5 structure", m5_structure),
        ("corner vertex B", corner_points),
        ("emissions objective", emissions_objective),
        ("derivation regression", derivation_regression),
    ];
    let mut failed = 0;
    let mut line = |i: usize, name: &str, outcome: Outcome| {
        match outcome {
            Ok(detail) => println!("PASS {i:>2} {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL {i:>2} {name}: {why}");
            }
        }
    };
    for (i, (name, check)) in criteria.iter().enumerate() {
        line(i + 1, name, check());
    }
    line(10, "oracle equivalence", oracle_equivalence(started));
    println!("{} of 10 criteria pass", 10 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
