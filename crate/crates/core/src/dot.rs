//! Graphviz DOT export.

use std::fmt::Write;

use crate::bounds::bad_vertices;
use crate::hamiltonian::{HamTriangulation, Side};
use crate::mop::{MopGraph, Pos};

fn node_line(out: &mut String, v: Pos, n: usize, degree_two: bool, bad: bool, chosen: bool) {
    let angle = std::f64::consts::TAU * (v - 1) as f64 / n as f64;
    let (x, y) = (3.0 * angle.sin(), 3.0 * angle.cos());
    let mut attrs = vec![format!("pos=\"{x:.3},{y:.3}!\"")];
    if bad {
        attrs.push("shape=doublecircle".into());
        attrs.push("color=red".into());
    } else if degree_two {
        attrs.push("shape=circle".into());
        attrs.push("color=blue".into());
    }
    if chosen {
        attrs.push("style=filled".into());
        attrs.push("fillcolor=gold".into());
    }
    let _ = writeln!(out, "  {v} [{}];", attrs.join(", "));
}

/// Degree-2 vertices are blue, vertices of essential pairs red and doubled,
/// chords dashed, members of `set` filled.
pub fn mop_to_dot(g: &MopGraph, set: &[Pos]) -> String {
    let n = g.n();
    let bad = bad_vertices(g);
    let mut out = String::from("graph mop {\n  layout=neato;\n  node [shape=circle];\n");
    for v in 1..=n {
        node_line(&mut out, v, n, g.degree(v) == 2, bad.contains(&v), set.contains(&v));
    }
    for v in 1..=n {
        let _ = writeln!(out, "  {v} -- {} [penwidth=2];", g.next(v));
    }
    for &(a, b) in g.chords() {
        let _ = writeln!(out, "  {a} -- {b} [style=dashed];");
    }
    out.push_str("}\n");
    out
}

/// Interior chords dashed, exterior chords dotted and grey, 2-vertices blue.
pub fn ham_to_dot(t: &HamTriangulation, set: &[Pos]) -> String {
    let n = t.n();
    let two = t.two_vertices();
    let mut out = String::from("graph triangulation {\n  layout=neato;\n  node [shape=circle];\n");
    for v in 1..=n {
        node_line(&mut out, v, n, two.contains(&v), false, set.contains(&v));
    }
    for v in 1..=n {
        let _ = writeln!(out, "  {v} -- {} [penwidth=2];", v % n + 1);
    }
    for &(a, b) in t.side_graph(Side::Interior).chords() {
        let _ = writeln!(out, "  {a} -- {b} [style=dashed];");
    }
    for &(a, b) in t.side_graph(Side::Exterior).chords() {
        let _ = writeln!(out, "  {a} -- {b} [style=dotted, color=grey40];");
    }
    out.push_str("}\n");
    out
}
