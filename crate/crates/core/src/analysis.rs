//! Full structural report for one semiring: ideals, congruences, the
//! ideal/congruence correspondence and the simplicity verdicts.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::congruence::{
    enumerate_congruences, is_k_congruence, verify_bijection, zero_class, BijectionReport, MAX_CONGRUENCE_SCAN_ORDER,
};
use crate::error::Error;
use crate::ideals::{closure_unchecked, enumerate_ideals, is_trivial_ideal};
use crate::kernel::FiniteSemiring;

pub const ANALYSIS_FORMAT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub name: String,
    pub order: usize,
    pub elements: Vec<String>,
    pub zero: Option<String>,
    pub identity: Option<String>,
    pub additively_idempotent: bool,
    pub commutative_mul: bool,
    pub incline: bool,
    pub ring: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealEntry {
    pub elements: Vec<String>,
    pub k_ideal: bool,
    pub closure: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CongruenceEntry {
    pub classes: Vec<Vec<String>>,
    pub k_congruence: bool,
    pub zero_class: Option<Vec<String>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Simplicity {
    pub k_simple: bool,
    pub ideal_free: bool,
    pub congruence_simple: bool,
    pub k_congruence_simple: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub version: u32,
    pub summary: Summary,
    pub ideals: Vec<IdealEntry>,
    pub congruences: Vec<CongruenceEntry>,
    pub bijection: BijectionReport,
    pub simplicity: Simplicity,
}

fn names(sr: &FiniteSemiring, s: &crate::ElementSubset) -> Vec<String> {
    s.names(sr).into_iter().map(String::from).collect()
}

pub fn analyze(sr: &FiniteSemiring) -> Result<AnalysisReport, Error> {
    if sr.order() > MAX_CONGRUENCE_SCAN_ORDER {
        return Err(Error::OrderTooLarge {
            operation: "analysis",
            order: sr.order(),
            max: MAX_CONGRUENCE_SCAN_ORDER,
        });
    }
    let name_of = |e: crate::ElementId| sr.element_name(e).to_string();
    let summary = Summary {
        name: sr.name().to_string(),
        order: sr.order(),
        elements: sr.elements().to_vec(),
        zero: sr.find_zero().map(name_of),
        identity: sr.find_identity().map(name_of),
        additively_idempotent: sr.is_additively_idempotent(),
        commutative_mul: sr.is_commutative_mul(),
        incline: sr.is_incline(),
        ring: sr.is_ring(),
    };

    let ideal_sets = enumerate_ideals(sr)?;
    let ideals: Vec<IdealEntry> = ideal_sets
        .iter()
        .map(|a| {
            let closure = closure_unchecked(sr, a);
            IdealEntry {
                elements: names(sr, a),
                k_ideal: closure == *a,
                closure: names(sr, &closure),
            }
        })
        .collect();

    let congs = enumerate_congruences(sr)?;
    let congruences: Vec<CongruenceEntry> = congs
        .iter()
        .map(|t| CongruenceEntry {
            classes: t.classes().iter().map(|c| names(sr, c)).collect(),
            k_congruence: is_k_congruence(sr, t),
            zero_class: zero_class(sr, t).map(|z| names(sr, &z)),
        })
        .collect();

    let k_simple = ideal_sets
        .iter()
        .zip(&ideals)
        .all(|(a, e)| !e.k_ideal || is_trivial_ideal(sr, a));
    let simplicity = Simplicity {
        k_simple,
        ideal_free: ideal_sets.iter().all(|a| is_trivial_ideal(sr, a)),
        congruence_simple: congs.len() == 2,
        k_congruence_simple: congs
            .iter()
            .zip(&congruences)
            .all(|(t, e)| !e.k_congruence || t.is_universal() || t.is_identity()),
    };

    Ok(AnalysisReport {
        version: ANALYSIS_FORMAT_VERSION,
        summary,
        ideals,
        congruences,
        bijection: verify_bijection(sr)?,
        simplicity,
    })
}

fn set(v: &[String]) -> String {
    format!("{{{}}}", v.join(","))
}

impl AnalysisReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let s = &self.summary;
        let mut out = String::new();
        let yes = |b: bool| if b { "yes" } else { "no" };
        let _ = writeln!(out, "semiring {} (order {})", s.name, s.order);
        let _ = writeln!(out, "elements {}", s.elements.join(" "));
        let _ = writeln!(out, "zero {}", s.zero.as_deref().unwrap_or("none"));
        let _ = writeln!(out, "identity {}", s.identity.as_deref().unwrap_or("none"));
        let _ = writeln!(out, "additively idempotent {}", yes(s.additively_idempotent));
        let _ = writeln!(out, "commutative multiplication {}", yes(s.commutative_mul));
        let _ = writeln!(out, "incline {}", yes(s.incline));
        let _ = writeln!(out, "ring {}", yes(s.ring));

        let k_ideals = self.ideals.iter().filter(|i| i.k_ideal).count();
        let _ = writeln!(out, "\nideals {} (k-ideals {})", self.ideals.len(), k_ideals);
        for i in &self.ideals {
            if i.k_ideal {
                let _ = writeln!(out, "  {} k", set(&i.elements));
            } else {
                let _ = writeln!(out, "  {} closure {}", set(&i.elements), set(&i.closure));
            }
        }

        let k_congs = self.congruences.iter().filter(|c| c.k_congruence).count();
        let _ = writeln!(out, "\ncongruences {} (k-congruences {})", self.congruences.len(), k_congs);
        for c in &self.congruences {
            let classes = c.classes.iter().map(|v| set(v)).collect::<Vec<_>>().join(" ");
            let zero = c.zero_class.as_ref().map_or("none".to_string(), |z| set(z));
            let _ = writeln!(out, "  {}{} zero-class {}", classes, if c.k_congruence { " k" } else { "" }, zero);
        }

        let b = &self.bijection;
        let _ = writeln!(
            out,
            "\nbijection {} (k-ideals {}, k-congruences {}, injective {}, surjective {}, inclusion {}, round trips {})",
            if b.holds() { "holds" } else { "FAILS" },
            b.k_ideal_count,
            b.k_congruence_count,
            yes(b.injective),
            yes(b.surjective),
            yes(b.inclusion_preserved),
            yes(b.round_trips_ok)
        );
        let v = &self.simplicity;
        let _ = writeln!(out, "k-simple {}", yes(v.k_simple));
        let _ = writeln!(out, "ideal-free {}", yes(v.ideal_free));
        let _ = writeln!(out, "congruence-simple {}", yes(v.congruence_simple));
        let _ = writeln!(out, "k-congruence-simple {}", yes(v.k_congruence_simple));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::congruence::is_k_congruence_simple;
    use crate::fixtures;
    use crate::ideals::{enumerate_k_ideals, is_ideal_free, is_k_simple};

    #[test]
    fn consistent_with_module_predicates() {
        for (_, sr) in fixtures::catalogue() {
            let r = analyze(&sr).unwrap();
            assert_eq!(r.simplicity.k_simple, is_k_simple(&sr).unwrap());
            assert_eq!(r.simplicity.ideal_free, is_ideal_free(&sr).unwrap());
            assert_eq!(r.simplicity.k_congruence_simple, is_k_congruence_simple(&sr).unwrap());
            assert_eq!(r.ideals.iter().filter(|i| i.k_ideal).count(), enumerate_k_ideals(&sr).unwrap().len());
            assert_eq!(r.bijection.k_ideal_count, r.ideals.iter().filter(|i| i.k_ideal).count());
            assert_eq!(r.bijection.k_congruence_count, r.congruences.iter().filter(|c| c.k_congruence).count());
            assert!(r.bijection.holds());
        }
    }

    #[test]
    fn first_lattice_fixture() {
        let r = analyze(&fixtures::fig1_example34()).unwrap();
        let target = vec![vec!["0".to_string(), "a".into()], vec!["b".into(), "c".into(), "d".into(), "1".into()]];
        let entry = r.congruences.iter().find(|c| c.classes == target).unwrap();
        assert!(entry.k_congruence);
        assert!(r.to_text().contains("{0,a} {b,c,d,1} k zero-class {0,a}"));
    }

    #[test]
    fn second_lattice_fixture() {
        let r = analyze(&fixtures::fig2_example35()).unwrap();
        let entry = r
            .congruences
            .iter()
            .find(|c| c.classes.len() == 2 && c.classes[0] == vec!["0".to_string()])
            .unwrap();
        assert!(!entry.k_congruence);
        assert_eq!(entry.zero_class, Some(vec!["0".to_string()]));
    }

    #[test]
    fn deterministic_json() {
        let a = analyze(&fixtures::r0()).unwrap();
        assert!(a.simplicity.k_simple);
        assert_eq!(a.to_json(), analyze(&fixtures::r0()).unwrap().to_json());
    }
}
