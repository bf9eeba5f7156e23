//! DOT output for trees and tubes.

use std::collections::BTreeMap;
use std::fmt::Write;

use atlas_core::classify::{dplus_trivial_source, ClassifyError};
use atlas_core::dade::DadeElement;
use atlas_core::tree::{BrauerTree, Sign};

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            _ => out.push(c),
        }
    }
    out.push('"');
    out
}

/// The tree with signs, the exceptional vertex drawn doubled, and each edge's
/// position in the counter-clockwise order at its ends as tail and head labels.
pub fn tree(t: &BrauerTree) -> String {
    let params = t.params();
    let mut out = String::new();
    writeln!(out, "graph brauer_tree {{").unwrap();
    writeln!(out, "  graph [label={}];", quote(&format!("p={} n={} e={} m={}", params.p(), params.n(), params.e(), params.m())))
        .unwrap();
    writeln!(out, "  node [shape=circle];").unwrap();
    for v in t.vertex_ids() {
        let label = t.vertex_label(v);
        let sign = t.sign(v).symbol();
        let style = match (t.is_exceptional(v), t.sign(v)) {
            (true, _) => ", shape=doublecircle, style=filled, fillcolor=lightgrey",
            (false, Sign::Plus) => "",
            (false, Sign::Minus) => ", style=dashed",
        };
        writeln!(out, "  {} [label={}{}];", quote(label), quote(&format!("{label} {sign}")), style).unwrap();
    }
    for e in t.edge_ids() {
        let (a, b) = t.endpoints(e);
        let pos = |v| t.rotation(v).iter().position(|&x| x == e).expect("incident") + 1;
        writeln!(
            out,
            "  {} -- {} [label={}, taillabel=\"{}\", headlabel=\"{}\"];",
            quote(t.vertex_label(a)),
            quote(t.vertex_label(b)),
            quote(t.edge_label(e)),
            pos(a),
            pos(b)
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}

/// The tube flattened to `e` columns and `em` rows; row `d` holds the modules
/// with `d+ = d`. Rows of trivial source modules are filled and tagged with
/// their vertex `D_i`. Arrows wrapping around the cylinder are dashed.
pub fn tube(t: &BrauerTree, dade: &DadeElement) -> Result<String, ClassifyError> {
    let params = t.params();
    let (e, rows) = (params.e(), params.tube_rows());
    let mut marked: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
    for i in 1..=params.n() {
        marked.entry(dplus_trivial_source(&params, dade, i)?.dplus).or_default().push(i);
    }
    let node = |d: u64, j: u64| format!("r{d}c{j}");
    let mut out = String::new();
    writeln!(out, "digraph tube {{").unwrap();
    writeln!(out, "  graph [label={}, rankdir=BT];", quote(&format!("tube e={} rows={}", e, rows))).unwrap();
    writeln!(out, "  node [shape=box];").unwrap();
    for d in 0..rows {
        let mut line = String::from("  { rank=same;");
        for j in 0..e {
            let mut label = format!("d+={d}");
            let mut style = String::new();
            if let Some(is) = marked.get(&d) {
                let tags: Vec<String> = is.iter().map(|i| format!("D_{i}")).collect();
                label.push_str(&format!(" {}", tags.join(",")));
                style = ", style=filled, fillcolor=gold".to_string();
            }
            write!(line, " {} [label={}{}];", node(d, j), quote(&label), style).unwrap();
        }
        line.push_str(" }\n");
        out.push_str(&line);
    }
    for d in 0..rows.saturating_sub(1) {
        for j in 0..e {
            let next = (j + 1) % e;
            writeln!(out, "  {} -> {};", node(d, j), node(d + 1, j)).unwrap();
            let dashed = if next <= j { " [style=dashed]" } else { "" };
            writeln!(out, "  {} -> {}{};", node(d + 1, j), node(d, next), dashed).unwrap();
        }
    }
    out.push_str("}\n");
    Ok(out)
}
