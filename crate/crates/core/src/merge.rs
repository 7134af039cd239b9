//! Merging business models into one ecosystem multigraph.
//!
//! Stakeholders are unified by normalized id, after an optional explicit alias
//! map has been applied. There is no fuzzy matching.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::degree::LabeledGraph;
use crate::error::{AliasError, MergeError};
use crate::graph::SimpleGraph;
use crate::model::{timeline_cmp, BusinessModel, EdgeLabel, StakeholderId, StakeholderKind};
use crate::timestep::Timestep;

/// Normalized alias → canonical id. Resolution is a single lookup; no alias
/// may point at another alias.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AliasMap {
    entries: BTreeMap<StakeholderId, StakeholderId>,
}

impl AliasMap {
    pub fn new() -> Self {
        Self::default()
    }

    /// Parses `alias = canonical` lines. Blank lines and `#` comments are skipped.
    pub fn parse(text: &str) -> Result<Self, AliasError> {
        let mut map = AliasMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let Some((alias, canonical)) = content.split_once('=') else {
                return Err(AliasError {
                    line,
                    message: "expected `alias = canonical`".into(),
                });
            };
            map.insert(alias, canonical)
                .map_err(|message| AliasError { line, message })?;
        }
        Ok(map)
    }

    pub fn insert(&mut self, alias: &str, canonical: &str) -> Result<(), String> {
        let alias = StakeholderId::new(alias).map_err(|_| "empty alias".to_string())?;
        let canonical =
            StakeholderId::new(canonical).map_err(|_| "empty canonical name".to_string())?;
        if alias == canonical {
            return Ok(());
        }
        if self.entries.contains_key(&canonical) {
            return Err(format!("`{canonical}` is itself an alias"));
        }
        if self.entries.values().any(|c| *c == alias) {
            return Err(format!("`{alias}` is already used as a canonical name"));
        }
        match self.entries.get(&alias) {
            Some(existing) if *existing != canonical => {
                Err(format!("`{alias}` already maps to `{existing}`"))
            }
            _ => {
                self.entries.insert(alias, canonical);
                Ok(())
            }
        }
    }

    pub fn resolve<'a>(&'a self, id: &'a StakeholderId) -> &'a StakeholderId {
        self.entries.get(id).unwrap_or(id)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EcosystemNode {
    pub id: StakeholderId,
    pub display_name: String,
    pub kind: StakeholderKind,
    /// Number of input models that contain this stakeholder.
    pub frequency: usize,
    /// Names of those models, sorted.
    pub models: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EcosystemEdge {
    pub src: StakeholderId,
    pub dst: StakeholderId,
    pub label: EdgeLabel,
    pub timestep: Option<Timestep>,
    /// Name of the model this edge came from.
    pub model: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EcosystemGraph {
    nodes: BTreeMap<StakeholderId, EcosystemNode>,
    edges: Vec<EcosystemEdge>,
    model_count: usize,
}

impl EcosystemGraph {
    pub fn nodes(&self) -> impl ExactSizeIterator<Item = &EcosystemNode> {
        self.nodes.values()
    }

    pub fn node(&self, id: &StakeholderId) -> Option<&EcosystemNode> {
        self.nodes.get(id)
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edges(&self) -> &[EcosystemEdge] {
        &self.edges
    }

    pub fn model_count(&self) -> usize {
        self.model_count
    }
}

impl LabeledGraph for EcosystemGraph {
    fn contains_stakeholder(&self, id: &StakeholderId) -> bool {
        self.nodes.contains_key(id)
    }

    fn stakeholder_ids(&self) -> impl Iterator<Item = &StakeholderId> {
        self.nodes.keys()
    }

    fn labeled_edges(&self) -> impl Iterator<Item = (&StakeholderId, &StakeholderId, &EdgeLabel)> {
        self.edges.iter().map(|e| (&e.src, &e.dst, &e.label))
    }
}

struct Membership<'a> {
    kinds: BTreeMap<StakeholderKind, BTreeSet<&'a str>>,
    models: Vec<&'a str>,
    own_names: BTreeSet<&'a str>,
}

/// Merges models into one ecosystem graph. The result does not depend on the
/// order of `models`.
pub fn merge(
    models: &[BusinessModel],
    aliases: Option<&AliasMap>,
) -> Result<EcosystemGraph, MergeError> {
    let empty = AliasMap::new();
    let aliases = aliases.unwrap_or(&empty);
    let mut members: BTreeMap<StakeholderId, Membership<'_>> = BTreeMap::new();
    let mut edges = Vec::new();

    for model in models {
        let mut seen_here = BTreeSet::new();
        for s in model.stakeholders() {
            let resolved = aliases.resolve(&s.id);
            let entry = members
                .entry(resolved.clone())
                .or_insert_with(|| Membership {
                    kinds: BTreeMap::new(),
                    models: Vec::new(),
                    own_names: BTreeSet::new(),
                });
            entry.kinds.entry(s.kind).or_default().insert(model.name());
            if resolved == &s.id {
                entry.own_names.insert(&s.display_name);
            }
            if seen_here.insert(resolved.clone()) {
                entry.models.push(model.name());
            }
        }
        for e in model.edges() {
            edges.push(EcosystemEdge {
                src: aliases.resolve(&e.src).clone(),
                dst: aliases.resolve(&e.dst).clone(),
                label: e.label.clone(),
                timestep: e.timestep.clone(),
                model: model.name().to_string(),
            });
        }
    }

    let mut nodes = BTreeMap::new();
    for (id, m) in members {
        if m.kinds.len() > 1 {
            let list = |k| {
                m.kinds[&k]
                    .iter()
                    .map(|s| s.to_string())
                    .collect::<Vec<_>>()
            };
            return Err(MergeError::KindConflict {
                individual_in: list(StakeholderKind::Individual),
                institution_in: list(StakeholderKind::Institution),
                id,
            });
        }
        let kind = *m.kinds.keys().next().expect("at least one membership");
        let display_name = m
            .own_names
            .first()
            .map(|s| s.to_string())
            .unwrap_or_else(|| id.as_str().to_string());
        let mut model_names: Vec<String> = m.models.iter().map(|s| s.to_string()).collect();
        model_names.sort();
        nodes.insert(
            id.clone(),
            EcosystemNode {
                id,
                display_name,
                kind,
                frequency: model_names.len(),
                models: model_names,
            },
        );
    }

    edges.sort_by(|a, b| {
        a.src
            .cmp(&b.src)
            .then_with(|| a.dst.cmp(&b.dst))
            .then_with(|| a.label.cmp(&b.label))
            .then_with(|| timeline_cmp(a.timestep.as_ref(), b.timestep.as_ref()))
            .then_with(|| a.model.cmp(&b.model))
    });

    Ok(EcosystemGraph {
        nodes,
        edges,
        model_count: models.len(),
    })
}

/// Self-loops dropped, parallel and antiparallel edges collapsed; all nodes kept.
pub fn simple_undirected_projection(graph: &EcosystemGraph) -> SimpleGraph {
    SimpleGraph::new(
        graph.nodes.keys().cloned(),
        graph
            .edges
            .iter()
            .filter(|e| e.src != e.dst)
            .map(|e| (e.src.clone(), e.dst.clone())),
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SizeStats {
    pub max: usize,
    pub min: usize,
    pub mean: f64,
}

/// Stakeholders per model, before merging.
pub fn model_size_stats(models: &[BusinessModel]) -> Result<SizeStats, MergeError> {
    let sizes: Vec<usize> = models
        .iter()
        .map(BusinessModel::stakeholder_count)
        .collect();
    let (Some(&max), Some(&min)) = (sizes.iter().max(), sizes.iter().min()) else {
        return Err(MergeError::EmptyCorpus);
    };
    Ok(SizeStats {
        max,
        min,
        mean: sizes.iter().sum::<usize>() as f64 / sizes.len() as f64,
    })
}
