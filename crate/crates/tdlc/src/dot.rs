//! Graphviz export of Serre graphs, one undirected line per geometric edge.

use std::fmt::Write;

use tdlc_core::serre_graphs::SerreGraph;

/// `labels[v]` names vertex `v`; geometric edges are labelled `e/ē`.
pub fn serre_graph(g: &SerreGraph, name: &str, labels: &[String]) -> String {
    let mut out = format!("graph {name} {{\n");
    for v in 0..g.num_vertices() {
        let label = labels.get(v).cloned().unwrap_or_else(|| v.to_string());
        let _ = writeln!(out, "  v{v} [label=\"{}\"];", label.replace('"', "\\\""));
    }
    for e in g.positive_edges() {
        let _ = writeln!(out, "  v{} -- v{} [label=\"{e}/{}\"];", g.origin(e), g.terminus(e), g.bar(e));
    }
    out.push_str("}\n");
    out
}
