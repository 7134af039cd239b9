//! Domain types for stakeholder value-chain (SVC) business models.
//!
//! A [`BusinessModel`] is a directed multigraph: stakeholders are nodes carrying
//! exactly one kind attribute, and every relationship between two stakeholders
//! is stored as its own [`Edge`] with a single [`EdgeLabel`]. A drawn arrow
//! carrying several labels therefore becomes several parallel edges.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::ModelError;
use crate::timestep::Timestep;

/// Normalized stakeholder key: case-folded, trimmed, inner whitespace collapsed.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct StakeholderId(String);

impl StakeholderId {
    pub fn new(raw: &str) -> Result<Self, ModelError> {
        let key = normalize(raw);
        if key.is_empty() {
            return Err(ModelError::EmptyStakeholderId);
        }
        Ok(StakeholderId(key))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for StakeholderId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl AsRef<str> for StakeholderId {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

/// Identity normalization applied to stakeholder names and alias keys.
pub fn normalize(raw: &str) -> String {
    let mut out = String::with_capacity(raw.len());
    for word in raw.split_whitespace() {
        if !out.is_empty() {
            out.push(' ');
        }
        out.extend(word.chars().flat_map(char::to_lowercase));
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum StakeholderKind {
    Individual,
    Institution,
}

impl StakeholderKind {
    pub fn keyword(self) -> &'static str {
        match self {
            StakeholderKind::Individual => "individual",
            StakeholderKind::Institution => "institution",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stakeholder {
    pub id: StakeholderId,
    pub display_name: String,
    pub kind: StakeholderKind,
    pub comment: Option<String>,
}

impl Stakeholder {
    /// Builds a stakeholder whose id is derived from `display_name`.
    pub fn new(display_name: &str, kind: StakeholderKind) -> Result<Self, ModelError> {
        Ok(Stakeholder {
            id: StakeholderId::new(display_name)?,
            display_name: display_name.to_string(),
            kind,
            comment: None,
        })
    }

    pub fn with_comment(mut self, comment: impl Into<String>) -> Self {
        self.comment = Some(comment.into());
        self
    }
}

/// The three data types a data edge may carry.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DataKind {
    NonPersonal,
    /// A collection of personal data, written `data(P)`.
    PersonalCollection,
    /// Personal data of one identified individual, written `data(P:subject)`.
    PersonalIndividual(String),
}

impl DataKind {
    pub fn is_personal(&self) -> bool {
        !matches!(self, DataKind::NonPersonal)
    }

    pub fn class(&self) -> DataClass {
        match self {
            DataKind::NonPersonal => DataClass::NonPersonal,
            DataKind::PersonalCollection => DataClass::PersonalCollection,
            DataKind::PersonalIndividual(_) => DataClass::PersonalIndividual,
        }
    }
}

/// [`DataKind`] with the individual's subject erased; used for flow filters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DataClass {
    NonPersonal,
    PersonalCollection,
    PersonalIndividual,
}

impl DataClass {
    pub const ALL: [DataClass; 3] = [
        DataClass::NonPersonal,
        DataClass::PersonalCollection,
        DataClass::PersonalIndividual,
    ];
    pub const PERSONAL: [DataClass; 2] =
        [DataClass::PersonalCollection, DataClass::PersonalIndividual];
}

/// One relationship attribute of an edge.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EdgeLabel {
    Request,
    Service,
    Payment,
    Data(DataKind),
    /// Data processing, named by its algorithm. Always a self-loop.
    Process(String),
}

/// Label variant without payload, for filters and tallies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LabelKind {
    Request,
    Service,
    Payment,
    Data,
    Process,
}

impl LabelKind {
    pub const ALL: [LabelKind; 5] = [
        LabelKind::Request,
        LabelKind::Service,
        LabelKind::Payment,
        LabelKind::Data,
        LabelKind::Process,
    ];
}

impl EdgeLabel {
    pub fn kind(&self) -> LabelKind {
        match self {
            EdgeLabel::Request => LabelKind::Request,
            EdgeLabel::Service => LabelKind::Service,
            EdgeLabel::Payment => LabelKind::Payment,
            EdgeLabel::Data(_) => LabelKind::Data,
            EdgeLabel::Process(_) => LabelKind::Process,
        }
    }

    pub fn is_process(&self) -> bool {
        matches!(self, EdgeLabel::Process(_))
    }

    pub fn is_personal_data(&self) -> bool {
        matches!(self, EdgeLabel::Data(kind) if kind.is_personal())
    }

    /// Short diagram abbreviation: `R`, `S`, `$`, `D`, `D(P)`, `D(P:x)`, `Proc(x)`.
    pub fn abbreviation(&self) -> String {
        match self {
            EdgeLabel::Request => "R".to_string(),
            EdgeLabel::Service => "S".to_string(),
            EdgeLabel::Payment => "$".to_string(),
            EdgeLabel::Data(DataKind::NonPersonal) => "D".to_string(),
            EdgeLabel::Data(DataKind::PersonalCollection) => "D(P)".to_string(),
            EdgeLabel::Data(DataKind::PersonalIndividual(s)) => format!("D(P:{s})"),
            EdgeLabel::Process(name) => format!("Proc({name})"),
        }
    }
}

/// Text-format spelling of the label (`payment`, `data(P:alice)`, `proc(anonymize)`).
impl fmt::Display for EdgeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EdgeLabel::Request => f.write_str("request"),
            EdgeLabel::Service => f.write_str("service"),
            EdgeLabel::Payment => f.write_str("payment"),
            EdgeLabel::Data(DataKind::NonPersonal) => f.write_str("data"),
            EdgeLabel::Data(DataKind::PersonalCollection) => f.write_str("data(P)"),
            EdgeLabel::Data(DataKind::PersonalIndividual(s)) => write!(f, "data(P:{s})"),
            EdgeLabel::Process(name) => write!(f, "proc({name})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub src: StakeholderId,
    pub dst: StakeholderId,
    pub label: EdgeLabel,
    pub timestep: Option<Timestep>,
    pub comment: Option<String>,
}

impl Edge {
    pub fn new(src: StakeholderId, dst: StakeholderId, label: EdgeLabel) -> Self {
        Edge {
            src,
            dst,
            label,
            timestep: None,
            comment: None,
        }
    }

    pub fn at(mut self, timestep: Timestep) -> Self {
        self.timestep = Some(timestep);
        self
    }

    pub fn with_comment(mut self, comment: impl Into<String>) -> Self {
        self.comment = Some(comment.into());
        self
    }

    pub fn is_self_loop(&self) -> bool {
        self.src == self.dst
    }

    /// Canonical edge order: timestamped edges by (timestep, src, dst, label),
    /// untimed edges after all timestamped ones. Comments break remaining ties.
    pub fn canonical_cmp(&self, other: &Edge) -> Ordering {
        timeline_cmp(self.timestep.as_ref(), other.timestep.as_ref())
            .then_with(|| self.src.cmp(&other.src))
            .then_with(|| self.dst.cmp(&other.dst))
            .then_with(|| self.label.cmp(&other.label))
            .then_with(|| self.comment.cmp(&other.comment))
    }
}

/// Orders optional timesteps with missing ones last.
pub fn timeline_cmp(a: Option<&Timestep>, b: Option<&Timestep>) -> Ordering {
    match (a, b) {
        (Some(a), Some(b)) => a.cmp(b),
        (Some(_), None) => Ordering::Less,
        (None, Some(_)) => Ordering::Greater,
        (None, None) => Ordering::Equal,
    }
}

/// One SVC diagram. Immutable once built; see [`ModelBuilder`].
///
/// Equality is structural: the edge list is compared as a multiset.
#[derive(Debug, Clone)]
pub struct BusinessModel {
    name: String,
    stakeholders: BTreeMap<StakeholderId, Stakeholder>,
    edges: Vec<Edge>,
}

impl BusinessModel {
    pub fn builder(name: impl Into<String>) -> ModelBuilder {
        ModelBuilder {
            name: name.into(),
            stakeholders: BTreeMap::new(),
            edges: Vec::new(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn stakeholders(&self) -> impl ExactSizeIterator<Item = &Stakeholder> {
        self.stakeholders.values()
    }

    pub fn stakeholder(&self, id: &StakeholderId) -> Option<&Stakeholder> {
        self.stakeholders.get(id)
    }

    pub fn stakeholder_count(&self) -> usize {
        self.stakeholders.len()
    }

    /// Edges in declaration order.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Edges in canonical order. Untimed edges come last, in declaration order
    /// relative to each other.
    pub fn edges_in_time_order(&self) -> Vec<&Edge> {
        let mut edges: Vec<&Edge> = self.edges.iter().collect();
        edges.sort_by(|a, b| timeline_cmp(a.timestep.as_ref(), b.timestep.as_ref()));
        edges
    }

    pub(crate) fn canonical_edges(&self) -> Vec<&Edge> {
        let mut edges: Vec<&Edge> = self.edges.iter().collect();
        edges.sort_by(|a, b| a.canonical_cmp(b));
        edges
    }
}

impl PartialEq for BusinessModel {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
            && self.stakeholders == other.stakeholders
            && self.edges.len() == other.edges.len()
            && self.canonical_edges() == other.canonical_edges()
    }
}

impl Eq for BusinessModel {}

pub struct ModelBuilder {
    name: String,
    stakeholders: BTreeMap<StakeholderId, Stakeholder>,
    edges: Vec<Edge>,
}

impl ModelBuilder {
    pub fn add_stakeholder(&mut self, stakeholder: Stakeholder) -> Result<(), ModelError> {
        if self.stakeholders.contains_key(&stakeholder.id) {
            return Err(ModelError::DuplicateStakeholder(stakeholder.id));
        }
        self.stakeholders
            .insert(stakeholder.id.clone(), stakeholder);
        Ok(())
    }

    pub fn contains(&self, id: &StakeholderId) -> bool {
        self.stakeholders.contains_key(id)
    }

    /// Edges are not checked here; run [`crate::validate`] on the built model.
    pub fn add_edge(&mut self, edge: Edge) {
        self.edges.push(edge);
    }

    pub fn stakeholder(mut self, stakeholder: Stakeholder) -> Result<Self, ModelError> {
        self.add_stakeholder(stakeholder)?;
        Ok(self)
    }

    pub fn edge(mut self, edge: Edge) -> Self {
        self.add_edge(edge);
        self
    }

    pub fn build(self) -> BusinessModel {
        BusinessModel {
            name: self.name,
            stakeholders: self.stakeholders,
            edges: self.edges,
        }
    }
}
