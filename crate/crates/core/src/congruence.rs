//! Congruences, the Bourne relation, quotients and k-congruences.
//!
//! For an ideal `A` the Bourne relation is `x ~ y iff x + a = y + b` for some
//! `a, b` in `A`. A congruence is a k-congruence when it equals the Bourne
//! relation of some ideal. The decision procedure used here is the
//! quotient-zero criterion: the quotient has a zero class `Z` and the
//! congruence equals the Bourne relation of `Z`. The ideal-scan definition is
//! kept in [`oracle`] for cross-checking.

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::ideals::{closure_unchecked, enumerate_ideals, enumerate_k_ideals, is_ideal, is_k_ideal};
use crate::kernel::{FiniteSemiring, OpTable};
use crate::partition::Partition;
use crate::subset::ElementSubset;

/// Largest order for the set-partition scan (Bell(9) = 21147).
pub const MAX_CONGRUENCE_SCAN_ORDER: usize = 9;

/// A partition verified to be compatible with both operations.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Congruence(Partition);

impl Congruence {
    pub fn new(sr: &FiniteSemiring, p: Partition) -> Result<Self, Error> {
        if p.width() != sr.order() {
            return Err(Error::WidthMismatch {
                expected: sr.order(),
                found: p.width(),
            });
        }
        if !is_congruence(sr, &p) {
            return Err(Error::NotACongruence);
        }
        Ok(Congruence(p))
    }

    pub fn identity(sr: &FiniteSemiring) -> Self {
        Congruence(Partition::identity(sr.order()))
    }

    pub fn universal(sr: &FiniteSemiring) -> Self {
        Congruence(Partition::universal(sr.order()))
    }

    pub fn partition(&self) -> &Partition {
        &self.0
    }
}

impl std::ops::Deref for Congruence {
    type Target = Partition;
    fn deref(&self) -> &Partition {
        &self.0
    }
}

pub fn is_congruence(sr: &FiniteSemiring, p: &Partition) -> bool {
    let k = sr.order();
    if p.width() != k {
        return false;
    }
    for x in 0..k {
        for y in 0..x {
            if !p.related(x, y) {
                continue;
            }
            for c in 0..k {
                if !p.related(sr.add(x, c), sr.add(y, c))
                    || !p.related(sr.mul(x, c), sr.mul(y, c))
                    || !p.related(sr.mul(c, x), sr.mul(c, y))
                {
                    return false;
                }
            }
        }
    }
    true
}

/// The Bourne congruence of an ideal.
pub fn kappa(sr: &FiniteSemiring, a: &ElementSubset) -> Result<Congruence, Error> {
    if a.width() != sr.order() {
        return Err(Error::WidthMismatch {
            expected: sr.order(),
            found: a.width(),
        });
    }
    if !is_ideal(sr, a) {
        return Err(Error::NotAnIdeal);
    }
    Ok(kappa_unchecked(sr, a))
}

pub(crate) fn kappa_unchecked(sr: &FiniteSemiring, a: &ElementSubset) -> Congruence {
    let k = sr.order();
    // shifts[x] = {x + a | a in A}; x ~ y iff the shifts meet.
    let shifts: Vec<u64> = (0..k)
        .map(|x| a.iter().fold(0u64, |m, e| m | 1 << sr.add(x, e)))
        .collect();
    let related = |x: usize, y: usize| shifts[x] & shifts[y] != 0;
    let labels: Vec<usize> = (0..k)
        .map(|x| (0..=x).find(|&y| related(x, y)).expect("reflexive on a nonempty ideal"))
        .collect();
    let p = Partition::from_labels(&labels);
    // The relation must coincide with the partition built from first representatives.
    for x in 0..k {
        for y in 0..k {
            assert_eq!(related(x, y), p.related(x, y), "Bourne relation is an equivalence");
        }
    }
    assert!(is_congruence(sr, &p), "Bourne relation is compatible");
    Congruence(p)
}

/// A quotient `R / theta` with class representatives at the lowest index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientSemiring {
    pub congruence: Congruence,
    pub quotient: FiniteSemiring,
    /// Element of the base to its class index in the quotient.
    pub projection: Vec<usize>,
    pub classes: Vec<ElementSubset>,
}

pub fn quotient(sr: &FiniteSemiring, theta: &Congruence) -> QuotientSemiring {
    let classes = theta.classes();
    let n = classes.len();
    let reps: Vec<usize> = classes.iter().map(|c| c.first().expect("nonempty class")).collect();
    let k = sr.order();
    // Well-definedness: every representative choice gives the same class.
    for x in 0..k {
        for y in 0..k {
            let (cx, cy) = (theta.class_of(x), theta.class_of(y));
            assert_eq!(theta.class_of(sr.add(x, y)), theta.class_of(sr.add(reps[cx], reps[cy])));
            assert_eq!(theta.class_of(sr.mul(x, y)), theta.class_of(sr.mul(reps[cx], reps[cy])));
        }
    }
    let add = OpTable::from_fn(n, |i, j| theta.class_of(sr.add(reps[i], reps[j]))).expect("in range");
    let mul = OpTable::from_fn(n, |i, j| theta.class_of(sr.mul(reps[i], reps[j]))).expect("in range");
    let names = reps.iter().map(|&r| format!("[{}]", sr.elements()[r])).collect();
    let quotient = FiniteSemiring::new(format!("{}/theta", sr.name()), names, add, mul)
        .expect("quotient of a semiring by a congruence is a semiring");
    if let Some(z) = sr.find_zero() {
        assert_eq!(
            quotient.find_zero().map(|e| e.0),
            Some(theta.class_of(z.0)),
            "class of zero is the zero of the quotient"
        );
    }
    QuotientSemiring {
        congruence: theta.clone(),
        quotient,
        projection: (0..k).map(|x| theta.class_of(x)).collect(),
        classes,
    }
}

/// The class acting as zero in the quotient, as a subset of the base.
pub fn zero_class(sr: &FiniteSemiring, theta: &Congruence) -> Option<ElementSubset> {
    let k = sr.order();
    let n = theta.num_classes();
    let reps: Vec<usize> = (0..n).map(|c| theta.class(c).first().unwrap()).collect();
    let z = (0..n).find(|&z| {
        reps.iter().all(|&r| {
            theta.class_of(sr.add(reps[z], r)) == theta.class_of(r)
                && theta.class_of(sr.mul(reps[z], r)) == z
                && theta.class_of(sr.mul(r, reps[z])) == z
        })
    })?;
    let class = theta.class(z);
    debug_assert_eq!(class.width(), k);
    assert!(is_k_ideal(sr, &class), "zero class of a quotient is a k-ideal");
    Some(class)
}

/// Quotient-zero criterion with equality: the decision procedure.
pub fn is_k_congruence(sr: &FiniteSemiring, theta: &Congruence) -> bool {
    match zero_class(sr, theta) {
        Some(z) => kappa_unchecked(sr, &z) == *theta,
        None => false,
    }
}

/// Quotient-zero criterion with inclusion: `theta` is contained in the
/// Bourne relation of its zero class.
pub fn is_k_congruence_by_inclusion(sr: &FiniteSemiring, theta: &Congruence) -> bool {
    match zero_class(sr, theta) {
        Some(z) => theta.is_finer_than(&kappa_unchecked(sr, &z)),
        None => false,
    }
}

/// First pair `(x, y)`, `x < y`, related by `theta` but not by `other`.
pub fn inclusion_counterexample(theta: &Partition, other: &Partition) -> Option<(usize, usize)> {
    let k = theta.width();
    (0..k)
        .flat_map(|x| (x + 1..k).map(move |y| (x, y)))
        .find(|&(x, y)| theta.related(x, y) && !other.related(x, y))
}

/// The k-ideal corresponding to a k-congruence.
pub fn iota(sr: &FiniteSemiring, theta: &Congruence) -> Result<ElementSubset, Error> {
    if !is_k_congruence(sr, theta) {
        return Err(Error::NotAKCongruence);
    }
    let z = zero_class(sr, theta).expect("k-congruences have a zero class");
    assert_eq!(kappa_unchecked(sr, &z), *theta);
    Ok(z)
}

fn check_scan_order(sr: &FiniteSemiring) -> Result<(), Error> {
    if sr.order() > MAX_CONGRUENCE_SCAN_ORDER {
        return Err(Error::OrderTooLarge {
            operation: "congruence enumeration",
            order: sr.order(),
            max: MAX_CONGRUENCE_SCAN_ORDER,
        });
    }
    Ok(())
}

/// All congruences, in restricted-growth lexicographic order.
pub fn enumerate_congruences(sr: &FiniteSemiring) -> Result<Vec<Congruence>, Error> {
    check_scan_order(sr)?;
    Ok(Partition::all(sr.order())
        .filter(|p| is_congruence(sr, p))
        .map(Congruence)
        .collect())
}

pub fn enumerate_k_congruences(sr: &FiniteSemiring) -> Result<Vec<Congruence>, Error> {
    Ok(enumerate_congruences(sr)?
        .into_iter()
        .filter(|t| is_k_congruence(sr, t))
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BijectionReport {
    pub k_ideal_count: usize,
    pub k_congruence_count: usize,
    pub injective: bool,
    pub surjective: bool,
    pub inclusion_preserved: bool,
    pub round_trips_ok: bool,
}

impl BijectionReport {
    pub fn holds(&self) -> bool {
        self.k_ideal_count == self.k_congruence_count
            && self.injective
            && self.surjective
            && self.inclusion_preserved
            && self.round_trips_ok
    }
}

/// Checks that the Bourne map restricted to k-ideals is an
/// inclusion-preserving bijection onto the k-congruences, with the
/// zero-class map as its inverse.
pub fn verify_bijection(sr: &FiniteSemiring) -> Result<BijectionReport, Error> {
    let k_ideals = enumerate_k_ideals(sr)?;
    let k_congs = enumerate_k_congruences(sr)?;
    let images: Vec<Congruence> = k_ideals.iter().map(|a| kappa_unchecked(sr, a)).collect();

    let injective = (0..images.len()).all(|i| (0..i).all(|j| images[i] != images[j]));
    let surjective = k_congs.iter().all(|t| images.contains(t)) && images.iter().all(|t| k_congs.contains(t));
    let mut inclusion_preserved = true;
    for (i, a) in k_ideals.iter().enumerate() {
        for (j, b) in k_ideals.iter().enumerate() {
            if a.is_subset_of(b) != images[i].is_finer_than(&images[j]) {
                inclusion_preserved = false;
            }
        }
    }
    let ideals_round_trip = k_ideals
        .iter()
        .zip(&images)
        .all(|(a, t)| iota(sr, t).as_ref() == Ok(a));
    let congruences_round_trip = k_congs
        .iter()
        .all(|t| iota(sr, t).map(|z| kappa_unchecked(sr, &z)).as_ref() == Ok(t));

    Ok(BijectionReport {
        k_ideal_count: k_ideals.len(),
        k_congruence_count: k_congs.len(),
        injective,
        surjective,
        inclusion_preserved,
        round_trips_ok: ideals_round_trip && congruences_round_trip,
    })
}

/// Two distinct ideals of `family` with the same Bourne congruence. Prefers a
/// pair `(A, closure(A))` when the family contains both.
pub fn kappa_injectivity_probe(
    sr: &FiniteSemiring,
    family: &[ElementSubset],
) -> Result<Option<(ElementSubset, ElementSubset)>, Error> {
    if family.iter().any(|a| !is_ideal(sr, a)) {
        return Err(Error::NotAnIdeal);
    }
    for a in family {
        let closed = closure_unchecked(sr, a);
        if closed != *a && family.contains(&closed) {
            assert_eq!(kappa_unchecked(sr, a), kappa_unchecked(sr, &closed));
            return Ok(Some((*a, closed)));
        }
    }
    let images: Vec<Congruence> = family.iter().map(|a| kappa_unchecked(sr, a)).collect();
    for i in 0..family.len() {
        for j in 0..i {
            if images[i] == images[j] && family[i] != family[j] {
                return Ok(Some((family[j], family[i])));
            }
        }
    }
    Ok(None)
}

/// Whether "has a zero" and "identity relation is a k-congruence" agree.
pub fn has_zero_iff_identity_k(sr: &FiniteSemiring) -> bool {
    sr.find_zero().is_some() == is_k_congruence(sr, &Congruence::identity(sr))
}

/// Exactly two congruences.
pub fn is_congruence_simple(sr: &FiniteSemiring) -> Result<bool, Error> {
    Ok(enumerate_congruences(sr)?.len() == 2)
}

/// Every k-congruence is the universal or the identity relation. The
/// identity relation need not be a k-congruence, so a zero-free semiring
/// whose only k-congruence is universal qualifies.
pub fn is_k_congruence_simple(sr: &FiniteSemiring) -> Result<bool, Error> {
    Ok(enumerate_k_congruences(sr)?
        .iter()
        .all(|t| t.is_universal() || t.is_identity()))
}

/// Reference implementations used to cross-check the decision procedures.
pub mod oracle {
    use super::*;

    /// A congruence is a k-congruence iff some ideal's Bourne relation equals
    /// it. Exponential: scans every ideal.
    pub fn is_k_congruence_by_ideal_scan(sr: &FiniteSemiring, theta: &Congruence) -> Result<bool, Error> {
        Ok(enumerate_ideals(sr)?.iter().any(|a| kappa_unchecked(sr, a) == *theta))
    }

    /// Bourne relation with a single shift: `x + c = y + c` for some `c` in `A`.
    /// Agrees with the two-element form on additively idempotent semirings.
    pub fn single_shift_relation(sr: &FiniteSemiring, a: &ElementSubset) -> Vec<bool> {
        let k = sr.order();
        let mut out = vec![false; k * k];
        for x in 0..k {
            for y in 0..k {
                out[x * k + y] = a.iter().any(|c| sr.add(x, c) == sr.add(y, c));
            }
        }
        out
    }

    /// Bourne relation straight from the definition, as a `k x k` matrix.
    pub fn two_shift_relation(sr: &FiniteSemiring, a: &ElementSubset) -> Vec<bool> {
        let k = sr.order();
        let mut out = vec![false; k * k];
        for x in 0..k {
            for y in 0..k {
                out[x * k + y] = a.iter().any(|p| a.iter().any(|q| sr.add(x, p) == sr.add(y, q)));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::ideals::k_closure;
    use crate::specfmt::zn_ring;

    fn set(sr: &FiniteSemiring, names: &[&str]) -> ElementSubset {
        ElementSubset::from_names(sr, names).unwrap()
    }

    fn blocks(sr: &FiniteSemiring, classes: &[&[&str]]) -> Partition {
        let b: Vec<ElementSubset> = classes.iter().map(|c| set(sr, c)).collect();
        Partition::from_blocks(sr.order(), &b).unwrap()
    }

    #[test]
    fn congruence_membership() {
        let ex35 = fixtures::fig2_example35();
        assert!(is_congruence(&ex35, &blocks(&ex35, &[&["0"], &["a", "b", "c", "1"]])));
        assert!(is_congruence(&ex35, &Partition::identity(5)));
        assert!(!is_congruence(&ex35, &blocks(&ex35, &[&["0", "a"], &["b"], &["c"], &["1"]])));
    }

    #[test]
    fn bourne_congruences() {
        let ex34 = fixtures::fig1_example34();
        let theta = kappa(&ex34, &set(&ex34, &["0", "a"])).unwrap();
        assert_eq!(*theta.partition(), blocks(&ex34, &[&["0", "a"], &["b", "c", "d", "1"]]));
        assert!(kappa(&ex34, &ElementSubset::full(6)).unwrap().is_universal());
        assert!(kappa(&ex34, &set(&ex34, &["0"])).unwrap().is_identity());
        assert_eq!(kappa(&ex34, &set(&ex34, &["a"])), Err(Error::NotAnIdeal));
    }

    #[test]
    fn kappa_matches_definition_on_fixtures() {
        for (_, sr) in fixtures::catalogue() {
            let k = sr.order();
            for a in enumerate_ideals(&sr).unwrap() {
                let theta = kappa(&sr, &a).unwrap();
                let rel = oracle::two_shift_relation(&sr, &a);
                for x in 0..k {
                    for y in 0..k {
                        assert_eq!(theta.related(x, y), rel[x * k + y]);
                    }
                }
            }
        }
    }

    #[test]
    fn quotients() {
        let ex34 = fixtures::fig1_example34();
        let q = quotient(&ex34, &Congruence::identity(&ex34));
        assert_eq!(q.quotient.add_table(), ex34.add_table());
        assert_eq!(q.quotient.mul_table(), ex34.mul_table());
        let q = quotient(&ex34, &Congruence::universal(&ex34));
        assert_eq!(q.quotient.order(), 1);
        let theta = kappa(&ex34, &set(&ex34, &["0", "a"])).unwrap();
        let q = quotient(&ex34, &theta);
        assert_eq!(q.quotient.order(), 2);
        assert_eq!(q.quotient.elements(), &["[0]".to_string(), "[b]".to_string()]);
        assert_eq!(q.quotient.find_zero().map(|e| e.0), Some(0));
        assert_eq!(q.classes[0], set(&ex34, &["0", "a"]));
    }

    #[test]
    fn zero_classes() {
        let ex35 = fixtures::fig2_example35();
        let theta = Congruence::new(&ex35, blocks(&ex35, &[&["0"], &["a", "b", "c", "1"]])).unwrap();
        assert_eq!(zero_class(&ex35, &theta), Some(set(&ex35, &["0"])));
        let ex34 = fixtures::fig1_example34();
        let k = kappa(&ex34, &set(&ex34, &["0", "a"])).unwrap();
        assert_eq!(zero_class(&ex34, &k), Some(set(&ex34, &["0", "a"])));
        assert!(zero_class(&ex34, &Congruence::universal(&ex34)).unwrap().is_full());
    }

    #[test]
    fn k_congruence_decisions() {
        let ex34 = fixtures::fig1_example34();
        let k = kappa(&ex34, &set(&ex34, &["0", "a"])).unwrap();
        assert!(is_k_congruence(&ex34, &k));
        let ex35 = fixtures::fig2_example35();
        let theta = Congruence::new(&ex35, blocks(&ex35, &[&["0"], &["a", "b", "c", "1"]])).unwrap();
        assert!(!is_k_congruence(&ex35, &theta));
        assert!(!is_k_congruence_by_inclusion(&ex35, &theta));
        let zero = kappa(&ex35, &set(&ex35, &["0"])).unwrap();
        assert_eq!(inclusion_counterexample(&theta, &zero), Some((1, 2)));
        assert!(is_k_congruence(&ex35, &Congruence::universal(&ex35)));
    }

    #[test]
    fn iota_values() {
        let ex34 = fixtures::fig1_example34();
        let a = set(&ex34, &["0", "a"]);
        assert_eq!(iota(&ex34, &kappa(&ex34, &a).unwrap()), Ok(a));
        assert!(iota(&ex34, &Congruence::universal(&ex34)).unwrap().is_full());
        assert_eq!(iota(&ex34, &Congruence::identity(&ex34)), Ok(set(&ex34, &["0"])));
        let ex35 = fixtures::fig2_example35();
        let theta = Congruence::new(&ex35, blocks(&ex35, &[&["0"], &["a", "b", "c", "1"]])).unwrap();
        assert_eq!(iota(&ex35, &theta), Err(Error::NotAKCongruence));
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_congruences(&fixtures::r0()).unwrap().len(), 2);
        assert_eq!(enumerate_k_congruences(&fixtures::r0()).unwrap().len(), 2);
        assert_eq!(enumerate_congruences(&zn_ring(4).unwrap()).unwrap().len(), 3);
        let ex35 = fixtures::fig2_example35();
        let theta = blocks(&ex35, &[&["0"], &["a", "b", "c", "1"]]);
        let all = enumerate_congruences(&ex35).unwrap();
        assert!(all.iter().any(|c| *c.partition() == theta));
        assert_eq!(
            enumerate_k_congruences(&ex35).unwrap().len(),
            enumerate_k_ideals(&ex35).unwrap().len()
        );
        let max2 = fixtures::max2();
        let kc = enumerate_k_congruences(&max2).unwrap();
        assert!(!kc.contains(&Congruence::identity(&max2)));
        assert_eq!(kc, vec![Congruence::universal(&max2)]);
    }

    #[test]
    fn bijection_reports() {
        for sr in [fixtures::fig1_example34(), fixtures::r1(), zn_ring(6).unwrap()] {
            let rep = verify_bijection(&sr).unwrap();
            assert!(rep.holds(), "{}: {rep:?}", sr.name());
        }
        let r1 = verify_bijection(&fixtures::r1()).unwrap();
        assert_eq!((r1.k_ideal_count, r1.k_congruence_count), (2, 2));
        let z6 = verify_bijection(&zn_ring(6).unwrap()).unwrap();
        assert_eq!((z6.k_ideal_count, z6.k_congruence_count), (4, 4));
    }

    #[test]
    fn injectivity_probe() {
        let z4 = zn_ring(4).unwrap();
        assert_eq!(kappa_injectivity_probe(&z4, &enumerate_ideals(&z4).unwrap()), Ok(None));
        let r0 = fixtures::r0();
        assert_eq!(kappa_injectivity_probe(&r0, &enumerate_ideals(&r0).unwrap()), Ok(None));
        let nat = fixtures::capped_nat(4);
        let ideals = enumerate_ideals(&nat).unwrap();
        let (a, b) = kappa_injectivity_probe(&nat, &ideals).unwrap().unwrap();
        assert_ne!(a, b);
        assert_eq!(b, k_closure(&nat, &a).unwrap());
        assert_eq!(kappa(&nat, &a).unwrap(), kappa(&nat, &b).unwrap());
        // Restricted to k-ideals the map is injective.
        let kis = enumerate_k_ideals(&nat).unwrap();
        assert_eq!(kappa_injectivity_probe(&nat, &kis), Ok(None));
    }

    #[test]
    fn zero_and_identity_relation() {
        for sr in [fixtures::r0(), fixtures::fig1_example34(), fixtures::max2()] {
            assert!(has_zero_iff_identity_k(&sr));
        }
        assert!(is_k_congruence(&fixtures::r0(), &Congruence::identity(&fixtures::r0())));
        let max2 = fixtures::max2();
        assert!(!is_k_congruence(&max2, &Congruence::identity(&max2)));
    }

    #[test]
    fn simplicity() {
        assert!(is_congruence_simple(&fixtures::r0()).unwrap());
        assert!(is_k_congruence_simple(&fixtures::r0()).unwrap());
        let ex34 = fixtures::fig1_example34();
        assert!(!is_congruence_simple(&ex34).unwrap());
        assert!(!is_k_congruence_simple(&ex34).unwrap());
        let z4 = zn_ring(4).unwrap();
        assert!(!is_congruence_simple(&z4).unwrap());
        assert!(!is_k_congruence_simple(&z4).unwrap());
    }

    #[test]
    fn criteria_agree_on_fixtures() {
        for (_, sr) in fixtures::catalogue() {
            if sr.order() > 6 {
                continue;
            }
            for theta in enumerate_congruences(&sr).unwrap() {
                let c3 = is_k_congruence(&sr, &theta);
                assert_eq!(c3, is_k_congruence_by_inclusion(&sr, &theta));
                assert_eq!(c3, oracle::is_k_congruence_by_ideal_scan(&sr, &theta).unwrap());
            }
        }
    }

    #[test]
    fn order_bound() {
        let big = zn_ring(10).unwrap();
        assert!(matches!(enumerate_congruences(&big), Err(Error::OrderTooLarge { .. })));
    }
}
