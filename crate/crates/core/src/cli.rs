//! Command-line front end. [`run`] is the whole program; the binary only
//! forwards `std::env::args` and exits with its return value.
//!
//! Exit codes: 0 success, 1 input error, 2 infeasible, 3 unbounded.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::Value;

use crate::analysis::{linspace, oracle_solve, reproduce_paper, sweep, variant_str, OracleResult};
use crate::derivation::derive_all;
use crate::error::{Error, Result};
use crate::format::{human, percent, table, whole};
use crate::lp::{solve, LinearProgram, Solution, SolverOptions, Status};
use crate::model::{
    builtin_scenario, compile, describe, load_scenario, merge_json, report, scenario_from_value, CapName,
    CoefficientVariant, ObjectiveMode, PeriodName, Scenario, ScenarioReport, CATALOG_NAMES,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_INFEASIBLE: i32 = 2;
pub const EXIT_UNBOUNDED: i32 = 3;

/// Directory of extra scenario files added to the catalog.
pub const CATALOG_DIR_ENV: &str = "GRIDMIX_CATALOG_DIR";

#[derive(Parser, Debug)]
#[command(name = "gridmix", version, about = "Clean-energy portfolio linear programs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List built-in scenarios (and any in $GRIDMIX_CATALOG_DIR).
    List {
        #[arg(long, value_enum)]
        variant: Option<VariantArg>,
        #[arg(long, value_enum, default_value = "text")]
        format: ListFormat,
    },
    /// Solve a catalog scenario, a scenario file or a bare LP file.
    Solve {
        /// Catalog name, scenario JSON file or bare LP JSON file.
        scenario: String,
        #[arg(long, value_enum, default_value = "as-printed")]
        variant: VariantArg,
        #[arg(long, value_enum)]
        objective: Option<ObjectiveArg>,
        /// Also solve by vertex enumeration and require agreement.
        #[arg(long)]
        oracle: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Catalog scenario the file's keys are merged over.
        #[arg(long)]
        base: Option<String>,
    },
    /// Re-solve over a range of one cap; writes CSV.
    Sweep {
        scenario: String,
        #[arg(long)]
        param: String,
        #[arg(long)]
        from: f64,
        #[arg(long)]
        to: f64,
        #[arg(long, default_value_t = 10)]
        steps: usize,
        #[arg(long, value_enum, default_value = "as-printed")]
        variant: VariantArg,
        #[arg(long)]
        base: Option<String>,
    },
    /// Compare solver output with every published result table.
    Audit {
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Only this table (5, 7, 8, 9, 10, 12, 13 or derivation).
        #[arg(long)]
        table: Option<String>,
        /// Also fail when a claimed near-match exceeds 1%.
        #[arg(long)]
        strict: bool,
    },
    /// Export the recomputed constants with provenance.
    Derive {
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum VariantArg {
    AsPrinted,
    TableDerived,
}

impl From<VariantArg> for CoefficientVariant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::AsPrinted => CoefficientVariant::AsPrinted,
            VariantArg::TableDerived => CoefficientVariant::TableDerived,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ObjectiveArg {
    Lcoe,
    Om,
    Emissions,
}

impl From<ObjectiveArg> for ObjectiveMode {
    fn from(v: ObjectiveArg) -> Self {
        match v {
            ObjectiveArg::Lcoe => ObjectiveMode::Lcoe,
            ObjectiveArg::Om => ObjectiveMode::OmOnly,
            ObjectiveArg::Emissions => ObjectiveMode::Emissions,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, ValueEnum)]
enum ListFormat {
    Text,
    Json,
}

/// Runs the CLI on `args` (including the program name).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INPUT
        }
    }
}

fn write_out(out: &mut dyn Write, text: &str) -> Result<()> {
    out.write_all(text.as_bytes()).map_err(|source| Error::Io {
        path: PathBuf::from("<stdout>"),
        source,
    })
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("report types serialize") + "\n"
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<i32> {
    match command {
        Command::List { variant, format } => {
            write_out(out, &cmd_list(variant.map(Into::into), format == ListFormat::Json)?)?;
            Ok(EXIT_OK)
        }
        Command::Solve {
            scenario,
            variant,
            objective,
            oracle,
            format,
            base,
        } => {
            let program = if base.is_none() { load_program(&scenario)? } else { None };
            let (text, status) = match program {
                Some(lp) => {
                    if objective.is_some() {
                        return Err(Error::Config("--objective applies to scenarios, not bare programs".into()));
                    }
                    cmd_solve_program(&lp, oracle, format)?
                }
                None => {
                    let mut s = resolve_scenario(&scenario, variant.into(), base.as_deref())?;
                    if let Some(o) = objective {
                        s.objective_mode = o.into();
                    }
                    cmd_solve(&s, oracle, format)?
                }
            };
            write_out(out, &text)?;
            Ok(match status {
                Status::Optimal => EXIT_OK,
                Status::Infeasible => EXIT_INFEASIBLE,
                Status::Unbounded => EXIT_UNBOUNDED,
            })
        }
        Command::Sweep {
            scenario,
            param,
            from,
            to,
            steps,
            variant,
            base,
        } => {
            let parameter: CapName = param.parse()?;
            let values = linspace(from, to, steps)?;
            let s = resolve_scenario(&scenario, variant.into(), base.as_deref())?;
            write_out(out, &cmd_sweep(&s, parameter, &values)?)?;
            Ok(EXIT_OK)
        }
        Command::Audit { format, table, strict } => {
            let mut report = reproduce_paper()?;
            if let Some(t) = &table {
                report = report.filtered(t);
                if report.tables.is_empty() {
                    return Err(Error::Config(format!("no audited table `{t}`")));
                }
            }
            let text = match format {
                Format::Text => report.to_text(),
                Format::Json => to_json(&report),
                Format::Csv => report.to_csv()?,
            };
            write_out(out, &text)?;
            Ok(if report.passes(strict) { EXIT_OK } else { EXIT_INPUT })
        }
        Command::Derive { format } => {
            write_out(out, &cmd_derive(format)?)?;
            Ok(EXIT_OK)
        }
    }
}

/// Scenario files found in `$GRIDMIX_CATALOG_DIR`, sorted by file name.
pub fn extra_catalog() -> Result<Vec<(PathBuf, Scenario)>> {
    let Some(dir) = std::env::var_os(CATALOG_DIR_ENV) else {
        return Ok(Vec::new());
    };
    let dir = PathBuf::from(dir);
    let entries = fs::read_dir(&dir).map_err(|source| Error::Io {
        path: dir.clone(),
        source,
    })?;
    let mut paths: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    paths.sort();
    paths
        .into_iter()
        .map(|p| load_scenario(&p).map(|s| (p, s)))
        .collect()
}

/// Catalog name, extra-catalog name, or file path (optionally merged over a
/// catalog base).
pub fn resolve_scenario(reference: &str, variant: CoefficientVariant, base: Option<&str>) -> Result<Scenario> {
    if let Some(base) = base {
        let path = Path::new(reference);
        let text = fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        let overlay: Value = serde_json::from_str(&text).map_err(|source| Error::Parse {
            context: reference.to_string(),
            source,
        })?;
        let mut merged = serde_json::to_value(builtin_scenario(base, variant)?).expect("scenario serializes");
        merge_json(&mut merged, overlay);
        return scenario_from_value(merged, reference);
    }
    if CATALOG_NAMES.contains(&reference) {
        return builtin_scenario(reference, variant);
    }
    if let Some((_, s)) = extra_catalog()?.into_iter().find(|(_, s)| s.name == reference) {
        return Ok(s);
    }
    let looks_like_path = reference.ends_with(".json") || reference.contains(std::path::MAIN_SEPARATOR);
    if looks_like_path || Path::new(reference).exists() {
        load_scenario(reference)
    } else {
        Err(Error::UnknownScenario(reference.to_string()))
    }
}

/// A JSON file holding a bare linear program (`sense`, `objective`,
/// `constraints`) rather than a scenario. `None` when `reference` is not one.
pub fn load_program(reference: &str) -> Result<Option<LinearProgram>> {
    let path = Path::new(reference);
    if !path.is_file() {
        return Ok(None);
    }
    let text = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let Ok(Value::Object(map)) = serde_json::from_str::<Value>(&text) else {
        return Ok(None);
    };
    if !map.contains_key("constraints") || map.contains_key("sources") {
        return Ok(None);
    }
    let mut lp: LinearProgram = serde_json::from_str(&text).map_err(|source| Error::Parse {
        context: reference.to_string(),
        source,
    })?;
    lp.fill_defaults();
    lp.validate()?;
    Ok(Some(lp))
}

fn cmd_solve_program(lp: &LinearProgram, with_oracle: bool, format: Format) -> Result<(String, Status)> {
    let sol = solve(lp, &SolverOptions::default())?;
    let oracle = with_oracle.then(|| confirm_with_oracle(lp, &sol)).transpose()?;
    let text = match format {
        Format::Json => to_json(&ProgramOutput {
            solution: &sol,
            oracle: oracle.as_ref(),
        }),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["variable", "value"]).map_err(csv_error)?;
            for (name, v) in lp.names.iter().zip(&sol.values) {
                w.write_record([name.clone(), v.to_string()]).map_err(csv_error)?;
            }
            finish_csv(w)?
        }
        Format::Text => {
            let mut out = format!("program: {} after {} iterations\n", sol.status, sol.iterations);
            if sol.is_optimal() {
                out += &format!("objective value: {}\n\n", human(sol.objective_value));
                let rows: Vec<Vec<String>> =
                    lp.names.iter().zip(&sol.values).map(|(n, v)| vec![n.clone(), human(*v)]).collect();
                out += &table(&["variable", "value"], &rows);
                out += &format!("\nbinding: {}\n", sol.binding.join(", "));
            }
            if let Some(o) = &oracle {
                out += &format!("oracle: {} over {} vertices, agrees\n", o.status, o.vertex_count);
            }
            out
        }
    };
    Ok((text, sol.status))
}

#[derive(Serialize)]
struct ProgramOutput<'a> {
    solution: &'a Solution,
    oracle: Option<&'a OracleResult>,
}

#[derive(Serialize)]
struct ListEntry {
    name: String,
    variant: &'static str,
    description: String,
    sources: Vec<String>,
}

fn cmd_list(variant: Option<CoefficientVariant>, json: bool) -> Result<String> {
    let variants: Vec<CoefficientVariant> = match variant {
        Some(v) => vec![v],
        None => vec![CoefficientVariant::AsPrinted, CoefficientVariant::TableDerived],
    };
    let mut entries = Vec::new();
    for name in CATALOG_NAMES {
        for &v in &variants {
            let s = builtin_scenario(name, v)?;
            entries.push(ListEntry {
                name: name.to_string(),
                variant: variant_str(v),
                description: describe(name).unwrap_or_default().to_string(),
                sources: s.sources.iter().map(|x| x.name.clone()).collect(),
            });
        }
    }
    for (path, s) in extra_catalog()? {
        if variant.is_none_or(|v| v == s.coefficient_variant) {
            entries.push(ListEntry {
                name: s.name.clone(),
                variant: variant_str(s.coefficient_variant),
                description: format!("from {}", path.display()),
                sources: s.sources.iter().map(|x| x.name.clone()).collect(),
            });
        }
    }
    if json {
        return Ok(to_json(&entries));
    }
    let rows: Vec<Vec<String>> = entries
        .iter()
        .map(|e| vec![e.name.clone(), e.variant.to_string(), e.sources.join(","), e.description.clone()])
        .collect();
    Ok(table(&["scenario", "variant", "sources", "description"], &rows))
}

#[derive(Serialize)]
struct SolveOutput<'a> {
    report: &'a ScenarioReport,
    values: &'a [f64],
    objective_value: Option<f64>,
    slacks: &'a [f64],
    oracle: Option<&'a OracleResult>,
}

fn objective_unit(mode: ObjectiveMode) -> &'static str {
    match mode {
        ObjectiveMode::Lcoe | ObjectiveMode::OmOnly => "$",
        ObjectiveMode::Emissions => "g CO2",
    }
}

fn objective_name(mode: ObjectiveMode) -> &'static str {
    match mode {
        ObjectiveMode::Lcoe => "lcoe",
        ObjectiveMode::OmOnly => "om",
        ObjectiveMode::Emissions => "emissions",
    }
}

/// Runs the vertex oracle on `lp` and fails unless it agrees with `sol`.
fn confirm_with_oracle(lp: &LinearProgram, sol: &Solution) -> Result<OracleResult> {
    let o = oracle_solve(lp)?;
    let agree = o.status == sol.status
        && match (o.objective, sol.is_optimal()) {
            (Some(v), true) => (v - sol.objective_value).abs() <= 1e-6 * v.abs().max(sol.objective_value.abs()).max(1.0),
            (None, false) => true,
            _ => false,
        };
    if agree {
        Ok(o)
    } else {
        Err(Error::Domain(format!(
            "oracle disagrees: simplex {} {}, enumeration {} {}",
            sol.status,
            human(sol.objective_value),
            o.status,
            o.objective.map(human).unwrap_or_default()
        )))
    }
}

fn cmd_solve(s: &Scenario, with_oracle: bool, format: Format) -> Result<(String, Status)> {
    let lp = compile(s)?;
    let sol: Solution = solve(&lp, &SolverOptions::default())?;
    let oracle = with_oracle.then(|| confirm_with_oracle(&lp, &sol)).transpose()?;
    let rep = report(s, &sol);
    let text = match format {
        Format::Json => to_json(&SolveOutput {
            report: &rep,
            values: &sol.values,
            objective_value: sol.is_optimal().then_some(sol.objective_value),
            slacks: &sol.slacks,
            oracle: oracle.as_ref(),
        }),
        Format::Csv => solve_csv(&rep)?,
        Format::Text => solve_text(s, &rep, &sol, oracle.as_ref()),
    };
    Ok((text, sol.status))
}

fn opt_whole(v: Option<f64>) -> String {
    v.map(whole).unwrap_or_else(|| "-".into())
}

fn solve_text(s: &Scenario, rep: &ScenarioReport, sol: &Solution, oracle: Option<&OracleResult>) -> String {
    let unit = objective_unit(s.objective_mode);
    let mut out = format!(
        "{} ({}), objective {}: {} after {} iterations\n",
        s.name,
        variant_str(s.coefficient_variant),
        objective_name(s.objective_mode),
        sol.status,
        sol.iterations
    );
    if let Some(t) = &rep.totals {
        out += &format!("objective value: {} {unit}\n\n", whole(sol.objective_value));
        let mut rows: Vec<Vec<String>> = rep
            .sources
            .iter()
            .map(|r| {
                let p = |i: usize| r.period_production.map(|pp| whole(pp[i])).unwrap_or_else(|| "-".into());
                vec![
                    r.name.clone(),
                    whole(r.production),
                    p(0),
                    p(1),
                    p(2),
                    opt_whole(r.land_ft2),
                    opt_whole(r.emissions_g),
                    opt_whole(r.capital_usd),
                    opt_whole(r.objective),
                ]
            })
            .collect();
        rows.push(vec![
            "total".into(),
            whole(t.production),
            String::new(),
            String::new(),
            String::new(),
            whole(t.land_ft2),
            whole(t.emissions_g),
            whole(t.capital_usd),
            whole(t.objective),
        ]);
        let objective_header = format!("objective ({unit})");
        out += &table(
            &[
                "source",
                "production (MWh)",
                PeriodName::EarlyMorning.as_str(),
                PeriodName::Daytime.as_str(),
                PeriodName::Evening.as_str(),
                "land (ft2)",
                "emissions (g CO2)",
                "capital ($)",
                &objective_header,
            ],
            &rows,
        );
        if !rep.periods.is_empty() {
            let rows: Vec<Vec<String>> = rep
                .periods
                .iter()
                .map(|p| vec![p.period.to_string(), whole(p.production), whole(p.demand), whole(p.surplus)])
                .collect();
            out += "\n";
            out += &table(&["period", "production (MWh)", "demand (MWh)", "surplus (MWh)"], &rows);
        }
        out += &format!("\nbinding: {}\n", rep.binding.join(", "));
    }
    if let Some(o) = oracle {
        out += &format!(
            "oracle: {} over {} vertices, objective {}, agrees\n",
            o.status,
            o.vertex_count,
            o.objective.map(whole).unwrap_or_else(|| "-".into())
        );
    }
    out
}

fn csv_error(e: impl std::fmt::Display) -> Error {
    Error::Domain(format!("csv: {e}"))
}

fn finish_csv(w: csv::Writer<Vec<u8>>) -> Result<String> {
    let bytes = w.into_inner().map_err(csv_error)?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn opt_full(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

fn solve_csv(rep: &ScenarioReport) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "source",
        "production_mwh",
        "early_morning_mwh",
        "daytime_mwh",
        "evening_mwh",
        "land_ft2",
        "emissions_g",
        "capital_usd",
        "objective",
    ])
    .map_err(csv_error)?;
    for r in &rep.sources {
        let p = |i: usize| opt_full(r.period_production.map(|pp| pp[i]));
        w.write_record([
            r.name.clone(),
            r.production.to_string(),
            p(0),
            p(1),
            p(2),
            opt_full(r.land_ft2),
            opt_full(r.emissions_g),
            opt_full(r.capital_usd),
            opt_full(r.objective),
        ])
        .map_err(csv_error)?;
    }
    finish_csv(w)
}

fn cmd_sweep(s: &Scenario, parameter: CapName, values: &[f64]) -> Result<String> {
    let points = sweep(s, parameter, values, &SolverOptions::default())?;
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec![parameter.to_string(), "status".into(), "objective".into()];
    header.extend(s.sources.iter().map(|x| format!("{}_mwh", x.name)));
    w.write_record(&header).map_err(csv_error)?;
    for p in points {
        let mut row = vec![p.value.to_string(), p.solution.status.to_string()];
        if p.solution.is_optimal() {
            row.push(p.solution.objective_value.to_string());
            row.extend(p.solution.values.iter().map(|v| v.to_string()));
        } else {
            row.extend(std::iter::repeat_n(String::new(), 1 + s.sources.len()));
        }
        w.write_record(&row).map_err(csv_error)?;
    }
    finish_csv(w)
}

fn cmd_derive(format: Format) -> Result<String> {
    let d = derive_all();
    match format {
        Format::Json => Ok(to_json(&d)),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["name", "value", "unit", "printed", "relative_delta", "provenance"])
                .map_err(csv_error)?;
            for k in &d.constants {
                w.write_record([
                    k.name.to_string(),
                    k.value.to_string(),
                    k.unit.to_string(),
                    opt_full(k.printed),
                    opt_full(k.relative_delta()),
                    k.provenance.to_string(),
                ])
                .map_err(csv_error)?;
            }
            finish_csv(w)
        }
        Format::Text => {
            let rows: Vec<Vec<String>> = d
                .constants
                .iter()
                .map(|k| {
                    vec![
                        k.name.to_string(),
                        human(k.value),
                        k.unit.to_string(),
                        k.printed.map(human).unwrap_or_else(|| "-".into()),
                        k.relative_delta().map(percent).unwrap_or_else(|| "-".into()),
                        k.provenance.to_string(),
                    ]
                })
                .collect();
            let mut out = table(&["constant", "value", "unit", "printed", "delta", "provenance"], &rows);
            let rows: Vec<Vec<String>> = d
                .deltas
                .iter()
                .map(|r| vec![r.name.clone(), human(r.derived), human(r.printed), percent(r.relative_delta)])
                .collect();
            out += "\ndelta table (above 0.05%, plus alternative baselines)\n";
            out += &table(&["constant", "derived", "printed", "delta"], &rows);
            Ok(out)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("gridmix").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn solve_m1_text() {
        let (code, out, _) = run_args(&["solve", "m1_flat_demand"]);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("25,621,059") && out.contains("968,476,030"), "{out}");
    }

    #[test]
    fn list_filters_by_variant() {
        let (_, all, _) = run_args(&["list"]);
        let (_, one, _) = run_args(&["list", "--variant", "as-printed"]);
        assert!(all.contains("m3_shared_space") && all.contains("table-derived"));
        assert!(!one.contains("table-derived"));
        let (_, json, _) = run_args(&["list", "--format", "json"]);
        let v: Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v.as_array().unwrap().len(), 18);
    }

    #[test]
    fn bad_inputs_exit_one() {
        assert_eq!(run_args(&["solve", "missing.json"]).0, EXIT_INPUT);
        assert_eq!(run_args(&["solve", "no_such_model"]).0, EXIT_INPUT);
        assert_eq!(run_args(&["frobnicate"]).0, EXIT_INPUT);
        assert_eq!(
            run_args(&["sweep", "m4_nuclear", "--param", "acres", "--from", "1", "--to", "2"]).0,
            EXIT_INPUT
        );
        assert_eq!(
            run_args(&["sweep", "m4_nuclear", "--param", "land_ft2", "--from", "3", "--to", "2"]).0,
            EXIT_INPUT
        );
    }

    #[test]
    fn infeasible_exits_two() {
        let (code, out, _) = run_args(&["solve", "m4_tight_space", "--variant", "table-derived"]);
        assert_eq!(code, EXIT_INFEASIBLE);
        assert!(out.contains("infeasible"));
    }

    #[test]
    fn help_exits_zero() {
        let (code, out, _) = run_args(&["--help"]);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("solve"));
    }
}
