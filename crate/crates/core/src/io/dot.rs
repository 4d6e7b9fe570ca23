use std::fmt::Write as _;

use crate::network::Network;

/// Graphviz description of a network. Leaves are boxes, reticulations are
/// filled circles, other vertices are points.
pub fn to_dot(net: &Network) -> String {
    let mut out = String::from("digraph network {\n  node [shape=point];\n");
    for v in 0..net.vertex_count() {
        if let Some(t) = net.label(v) {
            writeln!(out, "  v{v} [shape=box, label=\"{t}\"];").unwrap();
        } else if net.is_reticulation(v) {
            writeln!(out, "  v{v} [shape=circle, style=filled, width=0.15, label=\"\"];").unwrap();
        }
    }
    for (u, v) in net.arcs() {
        writeln!(out, "  v{u} -> v{v};").unwrap();
    }
    out.push_str("}\n");
    out
}
