//! Labeled in/out degree on the directed multigraph.
//!
//! Parallel edges count individually. A process self-loop counts once as
//! outgoing and once as incoming.

use crate::error::QueryError;
use crate::model::{BusinessModel, EdgeLabel, StakeholderId};

/// Anything that exposes stakeholders and directed labeled edges.
pub trait LabeledGraph {
    fn contains_stakeholder(&self, id: &StakeholderId) -> bool;

    /// All stakeholder ids in ascending order.
    fn stakeholder_ids(&self) -> impl Iterator<Item = &StakeholderId>;

    fn labeled_edges(&self) -> impl Iterator<Item = (&StakeholderId, &StakeholderId, &EdgeLabel)>;
}

impl LabeledGraph for BusinessModel {
    fn contains_stakeholder(&self, id: &StakeholderId) -> bool {
        self.stakeholder(id).is_some()
    }

    fn stakeholder_ids(&self) -> impl Iterator<Item = &StakeholderId> {
        self.stakeholders().map(|s| &s.id)
    }

    fn labeled_edges(&self) -> impl Iterator<Item = (&StakeholderId, &StakeholderId, &EdgeLabel)> {
        self.edges().iter().map(|e| (&e.src, &e.dst, &e.label))
    }
}

pub type LabelFilter<'a> = Option<&'a dyn Fn(&EdgeLabel) -> bool>;

pub fn in_degree<G: LabeledGraph>(
    graph: &G,
    id: &StakeholderId,
    filter: LabelFilter<'_>,
) -> Result<usize, QueryError> {
    if !graph.contains_stakeholder(id) {
        return Err(QueryError::NotFound(id.clone()));
    }
    Ok(graph
        .labeled_edges()
        .filter(|(_, dst, label)| *dst == id && filter.is_none_or(|f| f(label)))
        .count())
}

pub fn out_degree<G: LabeledGraph>(
    graph: &G,
    id: &StakeholderId,
    filter: LabelFilter<'_>,
) -> Result<usize, QueryError> {
    if !graph.contains_stakeholder(id) {
        return Err(QueryError::NotFound(id.clone()));
    }
    Ok(graph
        .labeled_edges()
        .filter(|(src, _, label)| *src == id && filter.is_none_or(|f| f(label)))
        .count())
}
