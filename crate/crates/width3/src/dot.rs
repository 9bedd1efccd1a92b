//! Graphviz output: Hasse diagrams ranked by level, with optional dashed
//! arrows showing where a retraction moves each non-fixed point.

use crate::level::level_structure;
use crate::poset::{bits, Poset};
use crate::retraction::Retraction;

pub fn to_dot(p: &Poset, retraction: Option<&Retraction>) -> String {
    let ls = level_structure(p);
    let mut out = String::from("digraph {\n  rankdir=BT;\n  node [shape=circle];\n");
    for k in 0..=ls.height() {
        out.push_str("  { rank=same;");
        for x in bits(ls.level(k)) {
            out.push_str(&format!(" n{x};"));
        }
        out.push_str(" }\n");
    }
    for x in 0..p.len() {
        for y in bits(p.upper_covers_in(x, p.all_mask())) {
            out.push_str(&format!("  n{x} -> n{y};\n"));
        }
    }
    if let Some(r) = retraction {
        for x in bits(r.domain) {
            if r.map[x] != x {
                out.push_str(&format!(
                    "  n{x} -> n{} [style=dashed, constraint=false];\n",
                    r.map[x]
                ));
            }
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn crown_diagram_has_cover_edges_only() {
        let p = Poset::crown(2);
        let dot = to_dot(&p, None);
        assert!(dot.contains("n0 -> n2;"));
        assert!(dot.contains("rank=same; n0; n1;"));
        assert!(!dot.contains("dashed"));
    }

    #[test]
    fn retraction_arrows_are_dashed() {
        let p = Poset::antichain(3);
        let r = Retraction::new(p.all_mask(), vec![0, 1, 1]);
        let dot = to_dot(&p, Some(&r));
        assert!(dot.contains("n2 -> n1 [style=dashed, constraint=false];"));
    }
}
