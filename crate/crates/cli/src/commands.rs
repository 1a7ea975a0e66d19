use std::fs;
use std::path::Path;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use kneser_core::bounds::bound_report;
use kneser_core::representation::{
    convexity_violation, kg1_clique_test, represent_up_monotone, up_monotone_violation, verify_representation,
    CliqueVerdict,
};
use kneser_core::{
    build_kneser, chromatic_number, colorability_defect, ColorClassOracle, Error, GroundContext, Hypergraph,
    KneserInstance, SearchBudget, SetSystem, Variant,
};
use serde_json::{json, Value};

use crate::{ledger, Format, Output};

pub const FACT_FAILED: u8 = 1;
pub const INPUT_ERROR: u8 = 2;
pub const BUDGET_EXHAUSTED: u8 = 3;

enum Input {
    System(SetSystem),
    Hypergraph(Hypergraph),
}

fn read_input(path: &Path) -> Result<Input> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let value: Value = serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    let parsed = if value.get("vertices").is_some() {
        serde_json::from_value(value).map(Input::Hypergraph)
    } else {
        serde_json::from_value(value).map(Input::System)
    };
    parsed.with_context(|| format!("invalid document in {}", path.display()))
}

fn read_system(path: &Path, s: Option<&str>) -> Result<SetSystem> {
    match read_input(path)? {
        Input::System(system) => with_multiplicities(system, s),
        Input::Hypergraph(_) => bail!("{} holds a hypergraph, expected a set system", path.display()),
    }
}

/// Replaces the file's multiplicities by `--s`: one constant or a full vector.
fn with_multiplicities(system: SetSystem, s: Option<&str>) -> Result<SetSystem> {
    let Some(spec) = s else { return Ok(system) };
    let values = spec
        .split(',')
        .map(|x| x.trim().parse::<u32>())
        .collect::<Result<Vec<u32>, _>>()
        .with_context(|| format!("--s expects an integer or a comma-separated list, got {spec:?}"))?;
    let n = system.ground().n();
    let ground = match values.as_slice() {
        [c] => GroundContext::uniform(n, *c)?,
        v if v.len() == n => GroundContext::new(v.to_vec())?,
        v => bail!("--s lists {} multiplicities but the ground set has {n} elements", v.len()),
    };
    Ok(system.with_ground(ground)?)
}

/// Prints `report` as JSON or as aligned `key: value` lines.
fn emit(output: &Output, report: &Value) -> Result<()> {
    match output.format {
        Format::Json => println!("{}", serde_json::to_string_pretty(report)?),
        Format::Text => {
            let Value::Object(map) = report else { unreachable!("reports are objects") };
            let width = map.keys().map(String::len).max().unwrap_or(0);
            for (key, value) in map {
                let shown = match value {
                    Value::String(s) => s.clone(),
                    Value::Null => "-".into(),
                    other => other.to_string(),
                };
                println!("{key:<width$}  {shown}");
            }
        }
    }
    Ok(())
}

fn write_out<T: serde::Serialize>(output: &Output, value: &T) -> Result<()> {
    if let Some(path) = &output.out {
        let text = serde_json::to_string(value)? + "\n";
        fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(())
}

pub fn build(path: &Path, r: usize, s: Option<&str>, variant: Variant, output: &Output) -> Result<ExitCode> {
    let system = read_system(path, s)?;
    let instance = KneserInstance::new(system, r, variant)?;
    let h = build_kneser(&instance)?;
    write_out(output, &h)?;
    emit(
        output,
        &json!({
            "instance": instance.to_string(),
            "vertices": h.vertex_count(),
            "edges": h.edge_count(),
        }),
    )?;
    Ok(ExitCode::SUCCESS)
}

pub fn chi(
    path: &Path,
    r: Option<usize>,
    s: Option<&str>,
    variant: Variant,
    budget_seconds: u64,
    output: &Output,
) -> Result<ExitCode> {
    let (label, oracle) = match read_input(path)? {
        Input::Hypergraph(h) => {
            if r.is_some() || s.is_some() {
                bail!("--r and --s apply to set systems, not hypergraph files");
            }
            ("explicit hypergraph".to_string(), ColorClassOracle::explicit(&h)?)
        }
        Input::System(system) => {
            let r = r.context("--r is required for a set system")?;
            let instance = KneserInstance::new(with_multiplicities(system, s)?, r, variant)?;
            (instance.to_string(), ColorClassOracle::implicit(&instance)?)
        }
    };
    let started = Instant::now();
    match chromatic_number(&oracle, &SearchBudget::seconds(budget_seconds)) {
        Ok(result) => {
            write_out(output, &result.witness)?;
            emit(
                output,
                &json!({
                    "instance": label,
                    "vertices": oracle.vertex_count(),
                    "chi": result.chi,
                    "nodes": result.nodes,
                    "millis": started.elapsed().as_millis() as u64,
                }),
            )?;
            Ok(ExitCode::SUCCESS)
        }
        Err(Error::Budget { lower, upper }) => {
            emit(
                output,
                &json!({
                    "instance": label,
                    "vertices": oracle.vertex_count(),
                    "chi": null,
                    "lower": lower,
                    "upper": upper,
                }),
            )?;
            eprintln!("budget of {budget_seconds} s exhausted; chi lies in [{lower}, {upper}]");
            Ok(ExitCode::from(BUDGET_EXHAUSTED))
        }
        Err(e) => Err(e.into()),
    }
}

pub fn defect(path: &Path, r: usize, s: Option<&str>, output: &Output) -> Result<ExitCode> {
    let system = read_system(path, s)?;
    let cert = colorability_defect(&system, r)?;
    write_out(output, &cert)?;
    let covers: Vec<String> = cert.covers().iter().map(ToString::to_string).collect();
    emit(output, &json!({ "r": r, "defect": cert.value(), "covers": covers.join(" ") }))?;
    Ok(ExitCode::SUCCESS)
}

pub fn bounds(path: &Path, r: usize, s: Option<&str>, budget_seconds: u64, output: &Output) -> Result<ExitCode> {
    let system = read_system(path, s)?;
    let report = bound_report(&system, r, &SearchBudget::seconds(budget_seconds))?;
    write_out(output, &report)?;
    emit(output, &serde_json::to_value(&report)?)?;
    let violations = report.violations();
    for v in &violations {
        eprintln!("violation: {v}");
    }
    Ok(if violations.is_empty() { ExitCode::SUCCESS } else { ExitCode::from(FACT_FAILED) })
}

pub fn represent(path: &Path, output: &Output) -> Result<ExitCode> {
    let h = match read_input(path)? {
        Input::Hypergraph(h) => h.as_multiset(),
        Input::System(_) => bail!("{} holds a set system, expected a hypergraph", path.display()),
    };
    let monotone = up_monotone_violation(&h)?;
    let convex = match convexity_violation(&h) {
        Ok(v) => Some(v),
        Err(Error::Capacity { .. }) => None,
        Err(e) => return Err(e.into()),
    };
    let mut report = json!({
        "up_monotone": monotone.is_none(),
        "up_monotone_witness": monotone.as_ref().map(|(e, f)| format!("{e} -> {f}")),
        "convex": convex.as_ref().map(Option::is_none),
        "convex_witness": convex.flatten().map(|p| p.to_string()),
    });
    if h.edges().iter().all(|e| e.is_set_edge()) {
        let test = kg1_clique_test(&h)?;
        report["kg1_representable"] = json!(test.representable());
        if let CliqueVerdict::MissingClique(c) = &test.verdict {
            let shown: Vec<String> = c.iter().map(|v| (v + 1).to_string()).collect();
            report["kg1_missing_clique"] = json!(shown.join(","));
        }
    }
    if monotone.is_none() {
        let rep = represent_up_monotone(&h)?;
        if !verify_representation(&h, &rep)? {
            bail!("constructed representation does not reproduce the hypergraph");
        }
        report["ground_size"] = json!(rep.system().ground().n());
        write_out(output, &rep)?;
    }
    emit(output, &report)?;
    Ok(ExitCode::SUCCESS)
}

pub fn verify_paper(scope: Option<&str>, budget_seconds: u64, output: &Output) -> Result<ExitCode> {
    if let Some(s) = scope {
        if !ledger::SCOPES.contains(&s) {
            bail!("unknown scope {s:?}; expected one of {}", ledger::SCOPES.join(", "));
        }
    }
    let facts = ledger::run(scope, &SearchBudget::seconds(budget_seconds))?;
    let rendered = match output.format {
        Format::Json => serde_json::to_string_pretty(&facts)? + "\n",
        Format::Text => ledger::render_text(&facts),
    };
    print!("{rendered}");
    if let Some(path) = &output.out {
        fs::write(path, &rendered).with_context(|| format!("writing {}", path.display()))?;
    }
    let failed = facts.iter().any(|f| f.status == ledger::Status::Fail);
    Ok(if failed { ExitCode::from(FACT_FAILED) } else { ExitCode::SUCCESS })
}
