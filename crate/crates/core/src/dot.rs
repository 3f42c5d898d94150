//! Graphviz export of Hasse diagrams: one edge per covering pair, drawn
//! bottom to top.

use std::fmt::Write;

use crate::frame::Frame;
use crate::sublocale::{enumerate_sublocales, SublocaleError};

fn escape(label: &str) -> String {
    label.replace('\\', "\\\\").replace('"', "\\\"")
}

fn render(name: &str, labels: &[String], edges: &[(usize, usize)]) -> String {
    let mut out = String::new();
    writeln!(out, "digraph \"{}\" {{", escape(name)).unwrap();
    writeln!(out, "  rankdir=BT;").unwrap();
    writeln!(out, "  node [shape=plaintext];").unwrap();
    for (i, label) in labels.iter().enumerate() {
        writeln!(out, "  n{i} [label=\"{}\"];", escape(label)).unwrap();
    }
    for (lo, hi) in edges {
        writeln!(out, "  n{lo} -> n{hi};").unwrap();
    }
    out.push_str("}\n");
    out
}

/// Hasse diagram of the frame's order.
pub fn frame_dot(name: &str, frame: &Frame) -> String {
    let labels: Vec<String> = frame.elements().map(|a| frame.label(a)).collect();
    let edges: Vec<(usize, usize)> = frame
        .covering_pairs()
        .into_iter()
        .map(|(a, b)| (a.index(), b.index()))
        .collect();
    render(name, &labels, &edges)
}

/// Hasse diagram of `S(L)` under inclusion.
pub fn sublocales_dot(name: &str, frame: &Frame) -> Result<String, SublocaleError> {
    let all = enumerate_sublocales(frame)?;
    let labels: Vec<String> = all
        .iter()
        .map(|s| format!("{{{}}}", s.labels().join(",")))
        .collect();
    let below = |i: usize, j: usize| i != j && all[i].members().is_subset(all[j].members());
    let mut edges = Vec::new();
    for i in 0..all.len() {
        for j in 0..all.len() {
            if below(i, j) && !(0..all.len()).any(|k| below(i, k) && below(k, j)) {
                edges.push((i, j));
            }
        }
    }
    Ok(render(name, &labels, &edges))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::fixtures;

    fn count(dot: &str, pat: &str) -> usize {
        dot.lines().filter(|l| l.contains(pat)).count()
    }

    #[test]
    fn c3_frame_and_sublocales() {
        let c3 = fixtures::c3();
        let dot = frame_dot("C3", &c3);
        assert!(dot.contains("rankdir=BT;"));
        assert_eq!(count(&dot, "[label="), 3);
        assert_eq!(count(&dot, "->"), 2);

        let dot = sublocales_dot("C3", &c3).unwrap();
        assert_eq!(count(&dot, "[label="), 4);
        assert_eq!(count(&dot, "->"), 4);
        // {1} is n0, {0,1} n1, {m,1} n2, L n3.
        for edge in ["n0 -> n1;", "n0 -> n2;", "n1 -> n3;", "n2 -> n3;"] {
            assert!(dot.contains(edge), "{edge}\n{dot}");
        }
    }

    #[test]
    fn b4_is_a_diamond() {
        let dot = frame_dot("B4", &fixtures::b4());
        assert_eq!(count(&dot, "[label="), 4);
        assert_eq!(count(&dot, "->"), 4);
    }

    #[test]
    fn labels_are_escaped() {
        let dot = render("a\"b", &["x\"y".into()], &[]);
        assert!(dot.contains("digraph \"a\\\"b\""));
        assert!(dot.contains("label=\"x\\\"y\""));
    }
}
