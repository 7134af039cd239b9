//! Knowledge-extraction queries over the directed, labeled multigraph.
//!
//! Counts here are label occurrences: parallel edges and edges coming from
//! different merged models are counted separately.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BTreeSet, BinaryHeap};

use serde::Serialize;

use crate::degree::LabeledGraph;
use crate::error::QueryError;
use crate::graph::SimpleGraph;
use crate::merge::{simple_undirected_projection, EcosystemGraph};
use crate::metrics::betweenness_by_index;
use crate::model::{DataClass, EdgeLabel, StakeholderId};
use crate::timestep::Timestep;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RankedCount {
    pub stakeholder: StakeholderId,
    pub count: usize,
}

fn ranked_incoming<G: LabeledGraph>(
    graph: &G,
    pick: impl Fn(&EdgeLabel) -> bool,
) -> Vec<RankedCount> {
    let mut counts: BTreeMap<&StakeholderId, usize> =
        graph.stakeholder_ids().map(|id| (id, 0)).collect();
    for (_, dst, label) in graph.labeled_edges() {
        if pick(label) {
            *counts.entry(dst).or_default() += 1;
        }
    }
    let mut ranked: Vec<RankedCount> = counts
        .into_iter()
        .map(|(id, count)| RankedCount {
            stakeholder: id.clone(),
            count,
        })
        .collect();
    ranked.sort_by(|a, b| {
        b.count
            .cmp(&a.count)
            .then_with(|| a.stakeholder.cmp(&b.stakeholder))
    });
    ranked
}

/// Incoming payment edges per stakeholder, most paid first, ties by id.
pub fn payment_received_counts<G: LabeledGraph>(graph: &G) -> Vec<RankedCount> {
    ranked_incoming(graph, |l| *l == EdgeLabel::Payment)
}

/// Incoming personal-data edges (`data(P)` or `data(P:x)`) per stakeholder.
pub fn personal_data_exposure_counts<G: LabeledGraph>(graph: &G) -> Vec<RankedCount> {
    ranked_incoming(graph, EdgeLabel::is_personal_data)
}

/// Stakeholders that receive personal data but never pass any on.
pub fn personal_data_sinks<G: LabeledGraph>(graph: &G) -> BTreeSet<StakeholderId> {
    let mut receives = BTreeSet::new();
    let mut forwards = BTreeSet::new();
    for (src, dst, label) in graph.labeled_edges() {
        if label.is_personal_data() && src != dst {
            receives.insert(dst);
            forwards.insert(src);
        }
    }
    receives
        .difference(&forwards)
        .map(|id| (*id).clone())
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FlowHop {
    pub src: StakeholderId,
    pub dst: StakeholderId,
    #[serde(serialize_with = "crate::report::label_string")]
    pub label: EdgeLabel,
    #[serde(serialize_with = "crate::report::timestep_string")]
    pub timestep: Option<Timestep>,
    pub model: String,
}

/// Everything reachable from `start` over data edges of the given classes,
/// with one witness path per reached stakeholder.
///
/// Along a path, each timed hop must not be earlier than the last timed hop
/// before it; untimed hops are always allowed and leave the bound unchanged.
/// The witness is a path that keeps the time bound as low as possible.
pub fn trace_flow(
    graph: &EcosystemGraph,
    start: &StakeholderId,
    classes: &[DataClass],
) -> Result<BTreeMap<StakeholderId, Vec<FlowHop>>, QueryError> {
    if graph.node(start).is_none() {
        return Err(QueryError::NotFound(start.clone()));
    }
    let edges = graph.edges();
    let mut outgoing: BTreeMap<&StakeholderId, Vec<usize>> = BTreeMap::new();
    for (i, e) in edges.iter().enumerate() {
        if let EdgeLabel::Data(kind) = &e.label {
            if e.src != e.dst && classes.contains(&kind.class()) {
                outgoing.entry(&e.src).or_default().push(i);
            }
        }
    }

    // Smallest reachable time bound per stakeholder, with the edge that set it.
    let mut best: BTreeMap<&StakeholderId, (Option<&Timestep>, Option<usize>)> = BTreeMap::new();
    let mut done: BTreeSet<&StakeholderId> = BTreeSet::new();
    let mut heap = BinaryHeap::new();
    let mut seq = 0u64;
    best.insert(start, (None, None));
    heap.push(Reverse((None::<&Timestep>, seq, start)));

    while let Some(Reverse((bound, _, node))) = heap.pop() {
        if !done.insert(node) {
            continue;
        }
        for &i in outgoing.get(node).map(Vec::as_slice).unwrap_or(&[]) {
            let e = &edges[i];
            let next = match (&e.timestep, bound) {
                (Some(t), Some(b)) if t < b => continue,
                (Some(t), _) => Some(t),
                (None, b) => b,
            };
            if done.contains(&e.dst) {
                continue;
            }
            let improves = best.get(&e.dst).is_none_or(|(b, _)| next < *b);
            if improves {
                best.insert(&e.dst, (next, Some(i)));
                seq += 1;
                heap.push(Reverse((next, seq, &e.dst)));
            }
        }
    }

    let mut out = BTreeMap::new();
    for (&node, _) in best.iter().filter(|(n, _)| **n != start) {
        let mut path = Vec::new();
        let mut cur = node;
        while let Some((_, Some(i))) = best.get(cur) {
            let e = &edges[*i];
            path.push(FlowHop {
                src: e.src.clone(),
                dst: e.dst.clone(),
                label: e.label.clone(),
                timestep: e.timestep.clone(),
                model: e.model.clone(),
            });
            cur = &e.src;
        }
        path.reverse();
        out.insert(node.clone(), path);
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RpsEntry {
    pub payments_in: usize,
    /// Outgoing service, data and process edges. Requests and payments are
    /// not counted.
    pub qualifying_out: usize,
    /// `payments_in / qualifying_out`; `None` when nothing qualifying was provided.
    pub rps: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RpsReport {
    pub per_stakeholder: BTreeMap<StakeholderId, RpsEntry>,
    /// Mean of the defined per-stakeholder values.
    pub ecosystem_rps: Option<f64>,
}

fn provides_value(label: &EdgeLabel) -> bool {
    matches!(
        label,
        EdgeLabel::Service | EdgeLabel::Data(_) | EdgeLabel::Process(_)
    )
}

/// Received profit sufficiency: payments received per unit of service, data
/// or processing provided.
pub fn rps<G: LabeledGraph>(graph: &G) -> RpsReport {
    let mut tally: BTreeMap<&StakeholderId, (usize, usize)> =
        graph.stakeholder_ids().map(|id| (id, (0, 0))).collect();
    for (src, dst, label) in graph.labeled_edges() {
        if *label == EdgeLabel::Payment {
            tally.entry(dst).or_default().0 += 1;
        }
        if provides_value(label) {
            tally.entry(src).or_default().1 += 1;
        }
    }
    let per_stakeholder: BTreeMap<StakeholderId, RpsEntry> = tally
        .into_iter()
        .map(|(id, (payments_in, qualifying_out))| {
            let rps = (qualifying_out > 0).then(|| payments_in as f64 / qualifying_out as f64);
            (
                id.clone(),
                RpsEntry {
                    payments_in,
                    qualifying_out,
                    rps,
                },
            )
        })
        .collect();
    let defined: Vec<f64> = per_stakeholder.values().filter_map(|e| e.rps).collect();
    let ecosystem_rps =
        (!defined.is_empty()).then(|| defined.iter().sum::<f64>() / defined.len() as f64);
    RpsReport {
        per_stakeholder,
        ecosystem_rps,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DegreeRank {
    pub stakeholder: StakeholderId,
    pub degree: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BetweennessRank {
    pub stakeholder: StakeholderId,
    pub betweenness: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CentralStakeholders {
    pub by_degree: Vec<DegreeRank>,
    pub by_betweenness: Vec<BetweennessRank>,
}

/// Top-k stakeholders by degree and by betweenness on the simple undirected
/// projection of the whole ecosystem. Ties go to the smaller id.
pub fn central_stakeholders(
    graph: &EcosystemGraph,
    k: usize,
) -> Result<CentralStakeholders, QueryError> {
    central_in(&simple_undirected_projection(graph), k)
}

pub fn central_in(sg: &SimpleGraph, k: usize) -> Result<CentralStakeholders, QueryError> {
    if k == 0 {
        return Err(QueryError::InvalidTopK);
    }
    let mut by_degree: Vec<usize> = (0..sg.node_count()).collect();
    by_degree.sort_by(|&a, &b| sg.degree(b).cmp(&sg.degree(a)).then(a.cmp(&b)));
    let bc = betweenness_by_index(sg);
    let mut by_bc: Vec<usize> = (0..sg.node_count()).collect();
    by_bc.sort_by(|&a, &b| bc[b].total_cmp(&bc[a]).then(a.cmp(&b)));
    Ok(CentralStakeholders {
        by_degree: by_degree
            .into_iter()
            .take(k)
            .map(|i| DegreeRank {
                stakeholder: sg.id(i).clone(),
                degree: sg.degree(i),
            })
            .collect(),
        by_betweenness: by_bc
            .into_iter()
            .take(k)
            .map(|i| BetweennessRank {
                stakeholder: sg.id(i).clone(),
                betweenness: bc[i],
            })
            .collect(),
    })
}

/// Parses `n`, `p`, `pi` and `personal` (case-insensitive) into data classes.
pub fn parse_data_classes(list: &str) -> Result<Vec<DataClass>, String> {
    let mut out = BTreeSet::new();
    for part in list.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        match part.to_ascii_lowercase().as_str() {
            "n" | "data" | "nonpersonal" => {
                out.insert(DataClass::NonPersonal);
            }
            "p" => {
                out.insert(DataClass::PersonalCollection);
            }
            "pi" => {
                out.insert(DataClass::PersonalIndividual);
            }
            "personal" => out.extend(DataClass::PERSONAL),
            "all" => out.extend(DataClass::ALL),
            other => {
                return Err(format!(
                    "unknown data kind `{other}` (expected n, p, pi, personal or all)"
                ))
            }
        }
    }
    if out.is_empty() {
        return Err("no data kinds given".into());
    }
    Ok(out.into_iter().collect())
}
