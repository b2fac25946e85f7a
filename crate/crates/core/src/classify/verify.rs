use serde::{Deserialize, Serialize};

use super::enumerate::{enumerate_inclines, MAX_IDEMPOTENT_ORDER};
use super::iso::are_isomorphic;
use crate::congruence::{is_congruence_simple, is_k_congruence_simple};
use crate::error::Error;
use crate::fixtures;
use crate::ideals::{find_nontrivial_k_ideal, is_ideal_free, is_k_ideal, is_k_simple, is_trivial_ideal};
use crate::specfmt::zn_ring;

/// Per-order outcome of the incline classification check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InclineOrderReport {
    pub order: usize,
    pub inclines: usize,
    pub k_simple: usize,
    /// k-simple exactly when isomorphic to one of the two 2-element inclines.
    pub k_simple_iff_two_element: bool,
    /// Every incline has a greatest and a least element.
    pub extremes_ok: bool,
    /// A proper nontrivial k-ideal was produced for each incline (orders >= 3).
    pub witnesses_ok: bool,
}

impl InclineOrderReport {
    pub fn holds(&self) -> bool {
        self.k_simple_iff_two_element && self.extremes_ok && self.witnesses_ok
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InclineReport {
    pub orders: Vec<InclineOrderReport>,
}

impl InclineReport {
    pub fn holds(&self) -> bool {
        self.orders.iter().all(|o| o.holds())
    }
}

/// Classifies the k-simple inclines of orders `2..=max_order`.
pub fn verify_k_simple_inclines(max_order: usize) -> Result<InclineReport, Error> {
    if max_order > MAX_IDEMPOTENT_ORDER {
        return Err(Error::OrderTooLarge {
            operation: "incline classification",
            order: max_order,
            max: MAX_IDEMPOTENT_ORDER,
        });
    }
    let small = [fixtures::r0(), fixtures::r1()];
    let mut orders = Vec::new();
    for order in 2..=max_order {
        let inclines = enumerate_inclines(order)?;
        let mut report = InclineOrderReport {
            order,
            inclines: inclines.len(),
            k_simple: 0,
            k_simple_iff_two_element: true,
            extremes_ok: true,
            witnesses_ok: true,
        };
        for sr in &inclines {
            let simple = is_k_simple(sr)?;
            report.k_simple += simple as usize;
            let known = small.iter().any(|s| are_isomorphic(sr, s).is_some());
            report.k_simple_iff_two_element &= simple == known;

            let ext = sr.extremal_elements()?;
            report.extremes_ok &= ext.greatest.is_some() && ext.least.is_some();

            if order >= 3 {
                let ok = match find_nontrivial_k_ideal(sr)? {
                    Some(w) => is_k_ideal(sr, &w) && !is_trivial_ideal(sr, &w),
                    None => false,
                };
                report.witnesses_ok &= ok;
            }
        }
        orders.push(report);
    }
    Ok(InclineReport { orders })
}

/// The six simplicity conditions on `Z_n`. The ring-theoretic conditions
/// coincide with their semiring counterparts for rings, so they are
/// evaluated by the same scans.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZnConditions {
    pub n: usize,
    pub ring_ideal_simple: bool,
    pub ideal_free: bool,
    pub k_simple: bool,
    pub ring_congruence_simple: bool,
    pub congruence_simple: bool,
    pub k_congruence_simple: bool,
    pub is_prime: bool,
}

impl ZnConditions {
    pub fn values(&self) -> [bool; 6] {
        [
            self.ring_ideal_simple,
            self.ideal_free,
            self.k_simple,
            self.ring_congruence_simple,
            self.congruence_simple,
            self.k_congruence_simple,
        ]
    }

    pub fn agree(&self) -> bool {
        self.values().iter().all(|&v| v == self.ideal_free)
    }
}

fn is_prime(n: usize) -> bool {
    n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

pub fn zn_simplicity_conditions(n: usize) -> Result<ZnConditions, Error> {
    let sr = zn_ring(n)?;
    let ideal_free = is_ideal_free(&sr)?;
    let congruence_simple = is_congruence_simple(&sr)?;
    Ok(ZnConditions {
        n,
        ring_ideal_simple: ideal_free,
        ideal_free,
        k_simple: is_k_simple(&sr)?,
        ring_congruence_simple: congruence_simple,
        congruence_simple,
        k_congruence_simple: is_k_congruence_simple(&sr)?,
        is_prime: is_prime(n),
    })
}
