//! The aggregate corpus report and its JSON / text renderings.
//!
//! JSON field order is the struct declaration order and maps are sorted, so a
//! given corpus and option set always renders to the same bytes.

use std::fmt::Write as _;

use serde::{Serialize, Serializer};

use crate::analytics::{
    central_stakeholders, payment_received_counts, personal_data_exposure_counts,
    personal_data_sinks, rps, CentralStakeholders, RankedCount, RpsReport,
};
use crate::error::MergeError;
use crate::merge::{merge, model_size_stats, simple_undirected_projection, AliasMap, SizeStats};
use crate::metrics::{metrics_report, LowDegreeClustering, MetricsOptions, MetricsReport};
use crate::model::{BusinessModel, EdgeLabel, StakeholderId};
use crate::timestep::Timestep;

pub const REPORT_SCHEMA_ID: &str = "svc-report/v1";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReportOptions {
    pub k_min: usize,
    pub top: usize,
    pub clustering: LowDegreeClustering,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions {
            k_min: 1,
            top: 3,
            clustering: LowDegreeClustering::Zero,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CorpusSection {
    pub model_count: usize,
    pub size_stats: SizeStats,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EcosystemSection {
    pub node_count: usize,
    /// Directed labeled edges, parallel edges counted separately.
    pub edge_count: usize,
    /// Components of the simple undirected projection, largest first.
    pub component_sizes: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QueriesSection {
    pub payments: Vec<RankedCount>,
    pub exposure: Vec<RankedCount>,
    pub sinks: Vec<StakeholderId>,
    pub central: CentralStakeholders,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportDocument {
    pub schema: &'static str,
    pub corpus: CorpusSection,
    pub ecosystem: EcosystemSection,
    /// Statistics of the largest component.
    pub metrics: MetricsReport,
    pub queries: QueriesSection,
    pub rps: RpsReport,
}

pub fn build_report(
    models: &[BusinessModel],
    aliases: Option<&AliasMap>,
    options: ReportOptions,
) -> Result<ReportDocument, MergeError> {
    let size_stats = model_size_stats(models)?;
    let eco = merge(models, aliases)?;
    let sg = simple_undirected_projection(&eco);
    let metrics = metrics_report(
        &sg,
        MetricsOptions {
            k_min: options.k_min,
            clustering: options.clustering,
        },
    );
    let central = central_stakeholders(&eco, options.top.max(1)).expect("top is positive");
    Ok(ReportDocument {
        schema: REPORT_SCHEMA_ID,
        corpus: CorpusSection {
            model_count: models.len(),
            size_stats,
        },
        ecosystem: EcosystemSection {
            node_count: eco.node_count(),
            edge_count: eco.edges().len(),
            component_sizes: metrics.component_sizes.clone(),
        },
        metrics,
        queries: QueriesSection {
            payments: payment_received_counts(&eco),
            exposure: personal_data_exposure_counts(&eco),
            sinks: personal_data_sinks(&eco).into_iter().collect(),
            central,
        },
        rps: rps(&eco),
    })
}

fn num(v: Option<f64>) -> String {
    v.map_or_else(|| "undefined".to_string(), |x| format!("{x:.4}"))
}

/// Human-readable report; reals rounded to four decimals.
pub fn render_text(doc: &ReportDocument) -> String {
    let mut out = String::new();
    let s = &doc.corpus.size_stats;
    let _ = writeln!(out, "corpus");
    let _ = writeln!(out, "  models                 {}", doc.corpus.model_count);
    let _ = writeln!(
        out,
        "  stakeholders per model max {} / min {} / mean {:.4}",
        s.max, s.min, s.mean
    );
    let _ = writeln!(out, "ecosystem");
    let _ = writeln!(out, "  stakeholders           {}", doc.ecosystem.node_count);
    let _ = writeln!(out, "  labeled edges          {}", doc.ecosystem.edge_count);
    let _ = writeln!(
        out,
        "  components             {:?}",
        doc.ecosystem.component_sizes
    );
    let m = &doc.metrics;
    let _ = writeln!(out, "largest component");
    let _ = writeln!(out, "  |V|                    {}", m.n_nodes);
    let _ = writeln!(out, "  |E|                    {}", m.n_edges);
    let _ = writeln!(out, "  average degree         {}", num(m.avg_degree));
    let _ = writeln!(out, "  density                {}", num(m.density));
    let _ = writeln!(out, "  average clustering     {}", num(m.avg_clustering));
    let _ = writeln!(out, "  assortativity          {}", num(m.assortativity));
    let _ = writeln!(out, "  power-law gamma        {}", num(m.gamma));

    let q = &doc.queries;
    let _ = writeln!(out, "payments received");
    for r in q.payments.iter().filter(|r| r.count > 0) {
        let _ = writeln!(out, "  {:>4}  {}", r.count, r.stakeholder);
    }
    let _ = writeln!(out, "personal data received");
    for r in q.exposure.iter().filter(|r| r.count > 0) {
        let _ = writeln!(out, "  {:>4}  {}", r.count, r.stakeholder);
    }
    let _ = writeln!(out, "personal data sinks");
    for id in &q.sinks {
        let _ = writeln!(out, "  {id}");
    }
    let _ = writeln!(out, "central by degree");
    for r in &q.central.by_degree {
        let _ = writeln!(out, "  {:>4}  {}", r.degree, r.stakeholder);
    }
    let _ = writeln!(out, "central by betweenness");
    for r in &q.central.by_betweenness {
        let _ = writeln!(out, "  {:>9.4}  {}", r.betweenness, r.stakeholder);
    }
    out.push_str(&render_rps_text(&doc.rps));
    out
}

pub fn render_rps_text(report: &RpsReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "received profit sufficiency");
    let _ = writeln!(
        out,
        "  {:>9}  {:>4}  {:>4}  stakeholder",
        "rps", "paid", "prov"
    );
    for (id, e) in &report.per_stakeholder {
        let _ = writeln!(
            out,
            "  {:>9}  {:>4}  {:>4}  {id}",
            num(e.rps),
            e.payments_in,
            e.qualifying_out
        );
    }
    let _ = writeln!(out, "  ecosystem {}", num(report.ecosystem_rps));
    out
}

pub(crate) fn label_string<S: Serializer>(label: &EdgeLabel, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(label)
}

pub(crate) fn timestep_string<S: Serializer>(
    ts: &Option<Timestep>,
    s: S,
) -> Result<S::Ok, S::Error> {
    match ts {
        Some(t) => s.collect_str(t),
        None => s.serialize_none(),
    }
}
