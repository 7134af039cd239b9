use std::fmt::Write as _;

use serde_json::json;
use svc_core::analytics::{
    central_stakeholders, parse_data_classes, payment_received_counts,
    personal_data_exposure_counts, personal_data_sinks, rps, trace_flow, FlowHop, RankedCount,
};
use svc_core::report::render_rps_text;
use svc_core::{EcosystemGraph, StakeholderId};

use crate::load::CliError;

fn to_json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("query results serialize");
    s.push('\n');
    s
}

fn ranked_text(header: &str, rows: &[RankedCount]) -> String {
    let mut out = format!("{:>5}  {header}\n", "count");
    for r in rows {
        let _ = writeln!(out, "{:>5}  {}", r.count, r.stakeholder);
    }
    out
}

pub fn payments(eco: &EcosystemGraph, as_json: bool) -> String {
    let rows = payment_received_counts(eco);
    if as_json {
        to_json(&rows)
    } else {
        ranked_text("stakeholder (payments received)", &rows)
    }
}

pub fn exposure(eco: &EcosystemGraph, as_json: bool) -> String {
    let rows = personal_data_exposure_counts(eco);
    if as_json {
        to_json(&rows)
    } else {
        ranked_text("stakeholder (personal data received)", &rows)
    }
}

pub fn sinks(eco: &EcosystemGraph, as_json: bool) -> String {
    let set = personal_data_sinks(eco);
    if as_json {
        return to_json(&set);
    }
    set.iter().map(|id| format!("{id}\n")).collect()
}

pub fn rps_table(eco: &EcosystemGraph, as_json: bool) -> String {
    let report = rps(eco);
    if as_json {
        to_json(&report)
    } else {
        render_rps_text(&report)
    }
}

pub fn central(eco: &EcosystemGraph, top: usize, as_json: bool) -> Result<String, CliError> {
    let c = central_stakeholders(eco, top)?;
    if as_json {
        return Ok(to_json(&c));
    }
    let mut out = String::from("by degree\n");
    for r in &c.by_degree {
        let _ = writeln!(out, "  {:>9}  {}", r.degree, r.stakeholder);
    }
    out.push_str("by betweenness\n");
    for r in &c.by_betweenness {
        let _ = writeln!(out, "  {:>9.4}  {}", r.betweenness, r.stakeholder);
    }
    Ok(out)
}

fn hop_text(h: &FlowHop) -> String {
    match &h.timestep {
        Some(t) => format!("-[{} @{t}]-> {}", h.label, h.dst),
        None => format!("-[{}]-> {}", h.label, h.dst),
    }
}

pub fn trace(
    eco: &EcosystemGraph,
    from: &str,
    kinds: &str,
    as_json: bool,
) -> Result<String, CliError> {
    let start = StakeholderId::new(from).map_err(|e| CliError::Domain(e.to_string()))?;
    let classes = parse_data_classes(kinds).map_err(CliError::Domain)?;
    let reached = trace_flow(eco, &start, &classes)?;
    if as_json {
        let rows: Vec<_> = reached
            .iter()
            .map(|(id, path)| json!({ "stakeholder": id, "path": path }))
            .collect();
        return Ok(to_json(&rows));
    }
    let mut out = String::new();
    for (id, path) in &reached {
        let _ = write!(out, "{id}: {start}");
        for h in path {
            let _ = write!(out, " {}", hop_text(h));
        }
        out.push('\n');
    }
    Ok(out)
}
