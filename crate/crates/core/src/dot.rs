//! Graphviz export of the natural order, the ideal lattice and the
//! congruence lattice. Edges point from a covered node up to its cover.

use std::fmt::Write as _;

use crate::congruence::{enumerate_congruences, is_k_congruence};
use crate::error::Error;
use crate::ideals::{enumerate_ideals, is_k_ideal};
use crate::kernel::FiniteSemiring;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DotTarget {
    Hasse,
    IdealLattice,
    CongruenceLattice,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DotNode {
    pub label: String,
    /// k-ideal or k-congruence; drawn with a double border.
    pub marked: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DotGraph {
    pub name: String,
    pub nodes: Vec<DotNode>,
    pub edges: Vec<(usize, usize)>,
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

impl DotGraph {
    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "digraph \"{}\" {{", escape(&self.name));
        let _ = writeln!(out, "  rankdir=BT;");
        let _ = writeln!(out, "  node [shape=ellipse];");
        for (i, n) in self.nodes.iter().enumerate() {
            let extra = if n.marked { ", peripheries=2" } else { "" };
            let _ = writeln!(out, "  n{i} [label=\"{}\"{extra}];", escape(&n.label));
        }
        for (a, b) in &self.edges {
            let _ = writeln!(out, "  n{a} -> n{b};");
        }
        out.push_str("}\n");
        out
    }
}

// Covering pairs of a partial order on 0..n, sorted.
fn covers(n: usize, leq: impl Fn(usize, usize) -> bool) -> Vec<(usize, usize)> {
    let lt = |a: usize, b: usize| a != b && leq(a, b);
    let mut out = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if lt(a, b) && !(0..n).any(|c| lt(a, c) && lt(c, b)) {
                out.push((a, b));
            }
        }
    }
    out
}

pub fn export(sr: &FiniteSemiring, target: DotTarget) -> Result<DotGraph, Error> {
    match target {
        DotTarget::Hasse => {
            let order = sr.natural_leq()?;
            Ok(DotGraph {
                name: format!("{} natural order", sr.name()),
                nodes: sr
                    .elements()
                    .iter()
                    .map(|e| DotNode {
                        label: e.clone(),
                        marked: false,
                    })
                    .collect(),
                edges: covers(sr.order(), |a, b| order.leq(a, b)),
            })
        }
        DotTarget::IdealLattice => {
            let ideals = enumerate_ideals(sr)?;
            Ok(DotGraph {
                name: format!("{} ideals", sr.name()),
                nodes: ideals
                    .iter()
                    .map(|a| DotNode {
                        label: a.display(sr),
                        marked: is_k_ideal(sr, a),
                    })
                    .collect(),
                edges: covers(ideals.len(), |a, b| ideals[a].is_subset_of(&ideals[b])),
            })
        }
        DotTarget::CongruenceLattice => {
            let congs = enumerate_congruences(sr)?;
            Ok(DotGraph {
                name: format!("{} congruences", sr.name()),
                nodes: congs
                    .iter()
                    .map(|t| DotNode {
                        label: t.display(sr),
                        marked: is_k_congruence(sr, t),
                    })
                    .collect(),
                edges: covers(congs.len(), |a, b| congs[a].is_finer_than(&congs[b])),
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::kernel::OpTable;

    #[test]
    fn first_lattice_hasse() {
        let g = export(&fixtures::fig1_example34(), DotTarget::Hasse).unwrap();
        assert_eq!(g.nodes.len(), 6);
        assert_eq!(g.edges.len(), 7);
        let text = g.render();
        assert_eq!(text.matches(" -> ").count(), 7);
        assert_eq!(text, export(&fixtures::fig1_example34(), DotTarget::Hasse).unwrap().render());
    }

    #[test]
    fn single_element() {
        let t = OpTable::new(1, vec![0]).unwrap();
        let sr = FiniteSemiring::with_numeric_names("one", t.clone(), t).unwrap();
        let g = export(&sr, DotTarget::Hasse).unwrap();
        assert_eq!((g.nodes.len(), g.edges.len()), (1, 0));
    }

    #[test]
    fn ideal_lattice_nodes_follow_enumeration() {
        let sr = fixtures::fig2_example35();
        let g = export(&sr, DotTarget::IdealLattice).unwrap();
        let labels: Vec<String> = enumerate_ideals(&sr).unwrap().iter().map(|a| a.display(&sr)).collect();
        assert_eq!(g.nodes.iter().map(|n| n.label.clone()).collect::<Vec<_>>(), labels);
        let ideals = enumerate_ideals(&sr).unwrap();
        assert!(g.nodes.iter().zip(&ideals).all(|(n, a)| n.marked == is_k_ideal(&sr, a)));
    }

    #[test]
    fn congruence_lattice_marks() {
        let sr = fixtures::fig2_example35();
        let g = export(&sr, DotTarget::CongruenceLattice).unwrap();
        assert!(g.nodes.iter().any(|n| n.marked));
        assert!(g.nodes.iter().any(|n| !n.marked));
    }

    #[test]
    fn hasse_needs_idempotent_addition() {
        let z3 = crate::specfmt::zn_ring(3).unwrap();
        assert!(export(&z3, DotTarget::Hasse).is_err());
    }
}
