use std::fmt::Write;

use crate::trees::graph::Graph;
use crate::trees::modular::ModularGraph;
use crate::trees::tree::Tree;

/// Extra marks for DOT output.
#[derive(Clone, Debug, Default)]
pub struct DotMarks<'a> {
    pub genus: Option<&'a [u32]>,
    pub highlighted_vertex: Option<usize>,
    pub highlighted_flags: &'a [usize],
}

/// Render a graph: vertices as circles (annotated with genus when given),
/// legs as loose half-edges ending in their label.
pub fn graph_to_dot(graph: &Graph, name: &str, marks: &DotMarks<'_>) -> String {
    let mut out = String::new();
    writeln!(out, "graph \"{name}\" {{").unwrap();
    writeln!(out, "  node [shape=circle, label=\"\"];").unwrap();
    for v in 0..graph.vertex_count() {
        let mut attrs = Vec::new();
        if let Some(genus) = marks.genus {
            attrs.push(format!("label=\"{}\"", genus[v]));
        }
        if marks.highlighted_vertex == Some(v) {
            attrs.push("color=red".to_string());
            attrs.push("penwidth=2".to_string());
        }
        writeln!(out, "  v{v} [{}];", attrs.join(", ")).unwrap();
    }
    let red = |f: usize| marks.highlighted_flags.contains(&f);
    for (label, f) in graph.legs() {
        writeln!(out, "  leg{label} [shape=plaintext, label=\"{label}\"];").unwrap();
        let colour = if red(f) { " [color=red]" } else { "" };
        writeln!(out, "  v{} -- leg{label}{colour};", graph.vertex_of(f)).unwrap();
    }
    for (f, g) in graph.edges() {
        let colour = if red(f) || red(g) { " [color=red]" } else { "" };
        writeln!(
            out,
            "  v{} -- v{}{colour};",
            graph.vertex_of(f),
            graph.vertex_of(g)
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}

impl Tree {
    pub fn to_dot(&self, name: &str) -> String {
        graph_to_dot(self.graph(), name, &DotMarks::default())
    }
}

impl ModularGraph {
    pub fn to_dot(&self, name: &str) -> String {
        let marks = DotMarks {
            genus: Some(self.genus_labels()),
            ..Default::default()
        };
        graph_to_dot(self.graph(), name, &marks)
    }
}
