//! Diagram export of the ecosystem graph (Graphviz DOT and GraphML).
//!
//! Institutions are boxes, individuals ellipses, and node width grows with the
//! number of models a stakeholder appears in. Parallel edges between the same
//! ordered pair are drawn once, with pen width equal to the number of labels.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::merge::EcosystemGraph;
use crate::model::{EdgeLabel, StakeholderId, StakeholderKind};

/// Width in inches for a node seen in `frequency` models.
pub fn node_width(frequency: usize) -> f64 {
    0.75 + 0.25 * frequency.saturating_sub(1) as f64
}

fn grouped_edges(
    graph: &EcosystemGraph,
) -> BTreeMap<(&StakeholderId, &StakeholderId), Vec<&EdgeLabel>> {
    let mut groups: BTreeMap<_, Vec<&EdgeLabel>> = BTreeMap::new();
    for e in graph.edges() {
        groups.entry((&e.src, &e.dst)).or_default().push(&e.label);
    }
    for labels in groups.values_mut() {
        labels.sort();
    }
    groups
}

fn dot_quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

pub fn to_dot(graph: &EcosystemGraph) -> String {
    let mut out = String::new();
    out.push_str("digraph ecosystem {\n");
    out.push_str("  node [fontname=\"Helvetica\"];\n");
    out.push_str("  edge [fontname=\"Helvetica\", fontsize=10];\n");
    for n in graph.nodes() {
        let shape = match n.kind {
            StakeholderKind::Institution => "box",
            StakeholderKind::Individual => "ellipse",
        };
        let _ = writeln!(
            out,
            "  {} [label={}, shape={shape}, width={:.2}, frequency={}];",
            dot_quote(n.id.as_str()),
            dot_quote(&n.display_name),
            node_width(n.frequency),
            n.frequency
        );
    }
    for ((src, dst), labels) in grouped_edges(graph) {
        let text = labels
            .iter()
            .map(|l| l.abbreviation())
            .collect::<Vec<_>>()
            .join(", ");
        let _ = writeln!(
            out,
            "  {} -> {} [label={}, penwidth={}];",
            dot_quote(src.as_str()),
            dot_quote(dst.as_str()),
            dot_quote(&text),
            labels.len()
        );
    }
    out.push_str("}\n");
    out
}

fn xml_escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            c => out.push(c),
        }
    }
    out
}

/// GraphML with one `<edge>` per labeled edge, so no information is collapsed.
pub fn to_graphml(graph: &EcosystemGraph) -> String {
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    out.push_str("<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n");
    for (id, target, name, ty) in [
        ("name", "node", "name", "string"),
        ("kind", "node", "kind", "string"),
        ("frequency", "node", "frequency", "int"),
        ("label", "edge", "label", "string"),
        ("timestep", "edge", "timestep", "string"),
        ("model", "edge", "model", "string"),
    ] {
        let _ = writeln!(
            out,
            "  <key id=\"{id}\" for=\"{target}\" attr.name=\"{name}\" attr.type=\"{ty}\"/>"
        );
    }
    out.push_str("  <graph id=\"ecosystem\" edgedefault=\"directed\">\n");
    for n in graph.nodes() {
        let _ = writeln!(out, "    <node id=\"{}\">", xml_escape(n.id.as_str()));
        let _ = writeln!(
            out,
            "      <data key=\"name\">{}</data>",
            xml_escape(&n.display_name)
        );
        let _ = writeln!(out, "      <data key=\"kind\">{}</data>", n.kind.keyword());
        let _ = writeln!(out, "      <data key=\"frequency\">{}</data>", n.frequency);
        out.push_str("    </node>\n");
    }
    for (i, e) in graph.edges().iter().enumerate() {
        let _ = writeln!(
            out,
            "    <edge id=\"e{i}\" source=\"{}\" target=\"{}\">",
            xml_escape(e.src.as_str()),
            xml_escape(e.dst.as_str())
        );
        let _ = writeln!(
            out,
            "      <data key=\"label\">{}</data>",
            xml_escape(&e.label.to_string())
        );
        if let Some(t) = &e.timestep {
            let _ = writeln!(out, "      <data key=\"timestep\">{t}</data>");
        }
        let _ = writeln!(
            out,
            "      <data key=\"model\">{}</data>",
            xml_escape(&e.model)
        );
        out.push_str("    </edge>\n");
    }
    out.push_str("  </graph>\n</graphml>\n");
    out
}
