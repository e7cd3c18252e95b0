use std::fmt::Write;

use confspace::discrete_config::{Cell1, DiscreteConfigComplex};
use confspace::Graph;

pub fn graph(g: &Graph) -> String {
    let mut out = String::from("digraph G {\n");
    for v in g.vertices() {
        writeln!(out, "  {v:?};").unwrap();
    }
    for e in g.edges() {
        writeln!(out, "  {:?} -> {:?} [label={:?}];", g.vertex_id(e.tail), g.vertex_id(e.head), e.id).unwrap();
    }
    out.push_str("}\n");
    out
}

/// The one-skeleton of D(G,2): vertices `(u,v)`, one arrow per one-cell.
pub fn one_skeleton(d: &DiscreteConfigComplex) -> String {
    let g = d.graph();
    let name = |u: usize, v: usize| format!("({},{})", g.vertex_id(u), g.vertex_id(v));
    let mut out = String::from("digraph D {\n");
    for &(u, v) in &d.cells0 {
        writeln!(out, "  {:?};", name(u, v)).unwrap();
    }
    for cell in &d.cells1 {
        let (from, to) = match *cell {
            Cell1::Horizontal { edge, vertex } => {
                let e = g.edge(edge);
                (name(e.tail, vertex), name(e.head, vertex))
            }
            Cell1::Vertical { vertex, edge } => {
                let e = g.edge(edge);
                (name(vertex, e.tail), name(vertex, e.head))
            }
        };
        writeln!(out, "  {from:?} -> {to:?} [label={:?}];", cell.label(g)).unwrap();
    }
    out.push_str("}\n");
    out
}
