use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::enumerate::{enumerate_keys, Constraints};
use super::iso::CanonicalKey;
use crate::congruence::{is_congruence_simple, is_k_congruence_simple};
use crate::error::Error;
use crate::ideals::{is_ideal_free, is_k_simple};
use crate::kernel::{FiniteSemiring, OpTable};

pub const CENSUS_FORMAT_VERSION: u32 = 1;

/// Printed at the top of every report.
pub const PROVENANCE_NOTE: &str = "counts derived by exhaustive enumeration in this repository";

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Flags {
    pub has_zero: bool,
    pub has_identity: bool,
    pub additively_idempotent: bool,
    pub commutative_mul: bool,
    pub incline: bool,
    pub ring: bool,
    pub k_simple: bool,
    pub ideal_free: bool,
    pub congruence_simple: bool,
    pub k_congruence_simple: bool,
}

impl Flags {
    pub fn of(sr: &FiniteSemiring) -> Result<Self, Error> {
        Ok(Flags {
            has_zero: sr.find_zero().is_some(),
            has_identity: sr.find_identity().is_some(),
            additively_idempotent: sr.is_additively_idempotent(),
            commutative_mul: sr.is_commutative_mul(),
            incline: sr.is_incline(),
            ring: sr.is_ring(),
            k_simple: is_k_simple(sr)?,
            ideal_free: is_ideal_free(sr)?,
            congruence_simple: is_congruence_simple(sr)?,
            k_congruence_simple: is_k_congruence_simple(sr)?,
        })
    }

    fn names(&self) -> Vec<&'static str> {
        [
            (self.has_zero, "zero"),
            (self.has_identity, "identity"),
            (self.additively_idempotent, "additively-idempotent"),
            (self.commutative_mul, "commutative-mul"),
            (self.incline, "incline"),
            (self.ring, "ring"),
            (self.k_simple, "k-simple"),
            (self.ideal_free, "ideal-free"),
            (self.congruence_simple, "congruence-simple"),
            (self.k_congruence_simple, "k-congruence-simple"),
        ]
        .iter()
        .filter(|(on, _)| *on)
        .map(|(_, n)| *n)
        .collect()
    }
}

/// One isomorphism class, represented by its canonical relabeling.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusEntry {
    pub name: String,
    pub key: String,
    pub flags: Flags,
    pub add: Vec<Vec<u8>>,
    pub mul: Vec<Vec<u8>>,
}

impl CensusEntry {
    pub fn semiring(&self) -> FiniteSemiring {
        let table = |rows: &[Vec<u8>]| {
            OpTable::from_rows(&rows.iter().map(|r| r.iter().map(|&v| v as usize).collect()).collect::<Vec<_>>())
                .expect("census tables are square")
        };
        FiniteSemiring::with_numeric_names(self.name.clone(), table(&self.add), table(&self.mul))
            .expect("census tables satisfy the laws")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusReport {
    pub version: u32,
    pub note: String,
    pub order: usize,
    pub constraints: Constraints,
    pub k_simple_only: bool,
    /// Isomorphism classes meeting the constraints.
    pub total: usize,
    pub k_simple_count: usize,
    pub entries: Vec<CensusEntry>,
}

impl CensusReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# census order={} constraints={}", self.order, self.constraints.label());
        let _ = writeln!(out, "# {}", self.note);
        let _ = writeln!(out, "total {}", self.total);
        let _ = writeln!(out, "k-simple {}", self.k_simple_count);
        let _ = writeln!(out, "listed {}{}", self.entries.len(), if self.k_simple_only { " (k-simple only)" } else { "" });
        let rows = |t: &[Vec<u8>]| {
            t.iter()
                .map(|r| r.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" "))
                .collect::<Vec<_>>()
                .join(" | ")
        };
        for e in &self.entries {
            let _ = writeln!(out, "{} key={} flags={}", e.name, e.key, e.flags.names().join(","));
            let _ = writeln!(out, "  add {}", rows(&e.add));
            let _ = writeln!(out, "  mul {}", rows(&e.mul));
        }
        out
    }
}

fn entry(key: &CanonicalKey, index: usize) -> Result<CensusEntry, Error> {
    let k = key.order();
    let rows = |b: &[u8]| b.chunks(k).map(|r| r.to_vec()).collect::<Vec<_>>();
    let mut e = CensusEntry {
        name: format!("o{k}-{index}"),
        key: key.to_string(),
        flags: Flags::default(),
        add: rows(key.add_entries()),
        mul: rows(key.mul_entries()),
    };
    e.flags = Flags::of(&e.semiring())?;
    Ok(e)
}

fn build(order: usize, constraints: &Constraints, k_simple_only: bool) -> Result<CensusReport, Error> {
    let keys = enumerate_keys(order, constraints)?;
    let all: Vec<CensusEntry> = keys.iter().enumerate().map(|(i, k)| entry(k, i)).collect::<Result<_, _>>()?;
    let k_simple_count = all.iter().filter(|e| e.flags.k_simple).count();
    let entries = if k_simple_only {
        all.into_iter().filter(|e| e.flags.k_simple).collect()
    } else {
        all
    };
    Ok(CensusReport {
        version: CENSUS_FORMAT_VERSION,
        note: PROVENANCE_NOTE.into(),
        order,
        constraints: *constraints,
        k_simple_only,
        total: keys.len(),
        k_simple_count,
        entries,
    })
}

/// Every class of the given order, in canonical-key order.
pub fn census(order: usize, constraints: &Constraints) -> Result<CensusReport, Error> {
    build(order, constraints, false)
}

/// Only the k-simple classes.
pub fn search_k_simple(order: usize, constraints: &Constraints) -> Result<CensusReport, Error> {
    build(order, constraints, true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::iso::{are_isomorphic, canonical_key};
    use crate::fixtures;
    use crate::specfmt::zn_ring;

    fn pinned(name: &str) -> CensusReport {
        let path = format!("{}/fixtures/census/{name}.json", env!("CARGO_MANIFEST_DIR"));
        let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"));
        CensusReport::from_json(&text).unwrap()
    }

    #[test]
    fn order_two_k_simple_includes_known_instances() {
        let report = search_k_simple(2, &Constraints::none()).unwrap();
        let members: Vec<FiniteSemiring> = report.entries.iter().map(|e| e.semiring()).collect();
        for known in [fixtures::r0(), fixtures::r1(), zn_ring(2).unwrap()] {
            assert!(members.iter().any(|m| are_isomorphic(m, &known).is_some()), "{}", known.name());
        }
        assert_eq!(report.k_simple_count, report.entries.len());
    }

    #[test]
    fn order_two_inclines_are_r0_and_r1() {
        let report = search_k_simple(2, &Constraints::incline()).unwrap();
        assert_eq!(report.total, 2);
        assert_eq!(report.k_simple_count, 2);
        let mut want = vec![canonical_key(&fixtures::r0()).unwrap().to_string(), canonical_key(&fixtures::r1()).unwrap().to_string()];
        want.sort();
        let got: Vec<String> = report.entries.iter().map(|e| e.key.clone()).collect();
        assert_eq!(got, want);
    }

    #[test]
    fn counts_match_entries() {
        let report = census(3, &Constraints::incline()).unwrap();
        assert_eq!(report.total, report.entries.len());
        assert_eq!(report.k_simple_count, report.entries.iter().filter(|e| e.flags.k_simple).count());
        let text = report.to_text();
        assert!(text.contains(PROVENANCE_NOTE));
        assert_eq!(CensusReport::from_json(&report.to_json()).unwrap(), report);
    }

    #[test]
    fn regression_against_pinned_reports() {
        for (name, order, c, only) in [
            ("order2_none", 2, Constraints::none(), false),
            ("order2_incline", 2, Constraints::incline(), false),
            ("order3_none", 3, Constraints::none(), false),
            ("order3_incline", 3, Constraints::incline(), false),
            ("order3_idempotent_k_simple", 3, Constraints::additively_idempotent(), true),
            ("order4_incline", 4, Constraints::incline(), false),
        ] {
            let got = build(order, &c, only).unwrap();
            assert_eq!(got, pinned(name), "{name}");
        }
        assert_eq!(pinned("order2_none").total, 10);
        assert_eq!(pinned("order3_none").total, 132);
        assert_eq!(pinned("order3_incline").total, 8);
        assert_eq!(pinned("order4_incline").total, 47);
    }
}
