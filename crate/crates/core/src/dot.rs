//! Graphviz output: Hasse diagrams of the induced orders, and the point
//! orders of a 2space with subbasis annotations.

use std::fmt::Write as _;

use crate::algebra::AlgebraTable;
use crate::duality::{FiniteFspace, TwoSpace};
use crate::order::{induced_order, NotASemilattice, OrderKind};

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Covering edges of `≤∧` or `≤∨`, drawn bottom-up from the smaller element.
pub fn hasse_dot(alg: &AlgebraTable, kind: OrderKind) -> Result<String, NotASemilattice> {
    let order = induced_order(alg, kind)?;
    let mut out = format!("digraph {kind}_order {{\n  rankdir=BT;\n");
    for a in 0..alg.len() {
        let _ = writeln!(out, "  n{a} [label={}];", quote(alg.name(a)));
    }
    for (a, b) in order.covers() {
        let _ = writeln!(out, "  n{a} -> n{b};");
    }
    out.push_str("}\n");
    Ok(out)
}

fn fspace_cluster(out: &mut String, fs: &FiniteFspace, prefix: &str, title: &str) {
    let _ = writeln!(out, "  subgraph cluster_{prefix} {{\n    label={};", quote(title));
    let np = fs.points().len();
    for p in 0..np {
        let member: Vec<&str> = (0..fs.subbasis().len())
            .filter(|&a| fs.subbasis()[a].contains(p))
            .map(|a| fs.labels()[a].as_str())
            .collect();
        let generates: Vec<&str> =
            (0..fs.generators().len()).filter(|&a| fs.generators()[a] == p).map(|a| fs.labels()[a].as_str()).collect();
        let mut label = format!("{}\\nin: {}", fs.point_label(p), member.join(" "));
        if !generates.is_empty() {
            let _ = write!(label, "\\ngenerates: {}", generates.join(" "));
        }
        let _ = writeln!(out, "    {prefix}{p} [label=\"{}\"];", label.replace('"', "\\\""));
    }
    let pts = fs.points();
    let below = |p: usize, q: usize| p != q && pts[p].is_subset(pts[q]);
    for p in 0..np {
        for q in 0..np {
            if below(p, q) && !(0..np).any(|r| below(p, r) && below(r, q)) {
                let _ = writeln!(out, "    {prefix}{p} -> {prefix}{q};");
            }
        }
    }
    out.push_str("  }\n");
}

/// Both point orders (inclusion covers) side by side, each point annotated
/// with the subbasic sets it lies in and the labels it generates.
pub fn twospace_dot(ts: &TwoSpace) -> String {
    let mut out = String::from("digraph twospace {\n  rankdir=BT;\n  node [shape=box];\n");
    fspace_cluster(&mut out, &ts.left, "f", "filters");
    fspace_cluster(&mut out, &ts.right, "i", "ideals");
    out.push_str("}\n");
    out
}
