//! Stakeholder value-chain (SVC) business models and ecosystem analytics.
//!
//! Models are parsed from a small text format ([`dsl`]), merged into one
//! ecosystem multigraph ([`merge`]), and analysed either as a simple
//! undirected graph ([`metrics`]) or through label-aware queries on the
//! directed multigraph ([`analytics`]).

pub mod analytics;
pub mod degree;
pub mod dsl;
pub mod error;
pub mod export;
pub mod graph;
pub mod merge;
pub mod metrics;
pub mod model;
pub mod report;
pub mod timestep;
pub mod validate;

pub use degree::{in_degree, out_degree, LabeledGraph};
pub use dsl::{parse, parse_located, serialize, SourceMap};
pub use error::{
    AliasError, MergeError, MetricsError, ModelError, ParseError, ParseErrorCode, QueryError,
    SerializeError,
};
pub use graph::{connected_components, largest_component, SimpleGraph};
pub use merge::{
    merge, model_size_stats, simple_undirected_projection, AliasMap, EcosystemEdge, EcosystemGraph,
    EcosystemNode, SizeStats,
};
pub use metrics::{MetricsOptions, MetricsReport, RemovalStrategy};
pub use model::{
    BusinessModel, DataClass, DataKind, Edge, EdgeLabel, LabelKind, Stakeholder, StakeholderId,
    StakeholderKind,
};
pub use report::{build_report, ReportDocument, ReportOptions};
pub use timestep::{compare_timesteps, Timestep};
pub use validate::{validate, Diagnostic, DiagnosticCode};
