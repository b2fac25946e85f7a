//! Ideals, subtractive closure and k-ideals.
//!
//! An ideal is a nonempty subset closed under addition and absorbing under
//! multiplication by any element from either side. The subtractive closure
//! (k-closure) of `A` is `{x | x + a = b for some a, b in A}`; a k-ideal is
//! an ideal equal to its own closure.

use crate::error::Error;
use crate::kernel::{ElementId, FiniteSemiring};
use crate::subset::ElementSubset;

/// Largest order for the brute-force subset scan.
pub const MAX_IDEAL_SCAN_ORDER: usize = 16;

fn check_width(sr: &FiniteSemiring, s: &ElementSubset) -> Result<(), Error> {
    if s.width() != sr.order() {
        return Err(Error::WidthMismatch {
            expected: sr.order(),
            found: s.width(),
        });
    }
    Ok(())
}

pub fn is_ideal(sr: &FiniteSemiring, s: &ElementSubset) -> bool {
    if s.width() != sr.order() || s.is_empty() {
        return false;
    }
    let k = sr.order();
    s.iter().all(|a| {
        s.iter().all(|b| s.contains(sr.add(a, b)))
            && (0..k).all(|r| s.contains(sr.mul(r, a)) && s.contains(sr.mul(a, r)))
    })
}

/// Subtractive closure of an ideal.
pub fn k_closure(sr: &FiniteSemiring, a: &ElementSubset) -> Result<ElementSubset, Error> {
    check_width(sr, a)?;
    if !is_ideal(sr, a) {
        return Err(Error::NotAnIdeal);
    }
    Ok(closure_unchecked(sr, a))
}

// x is in the closure iff x + a lands in A for some a in A.
pub(crate) fn closure_unchecked(sr: &FiniteSemiring, a: &ElementSubset) -> ElementSubset {
    let k = sr.order();
    ElementSubset::from_indices(k, (0..k).filter(|&x| a.iter().any(|m| a.contains(sr.add(x, m)))))
}

pub fn is_k_ideal(sr: &FiniteSemiring, a: &ElementSubset) -> bool {
    is_ideal(sr, a) && closure_unchecked(sr, a) == *a
}

/// All ideals, in ascending bit-pattern order.
pub fn enumerate_ideals(sr: &FiniteSemiring) -> Result<Vec<ElementSubset>, Error> {
    let k = sr.order();
    if k > MAX_IDEAL_SCAN_ORDER {
        return Err(Error::OrderTooLarge {
            operation: "ideal enumeration",
            order: k,
            max: MAX_IDEAL_SCAN_ORDER,
        });
    }
    Ok((1u64..1 << k)
        .map(|bits| ElementSubset::from_bits(k, bits))
        .filter(|s| is_ideal(sr, s))
        .collect())
}

pub fn enumerate_k_ideals(sr: &FiniteSemiring) -> Result<Vec<ElementSubset>, Error> {
    Ok(enumerate_ideals(sr)?
        .into_iter()
        .filter(|a| closure_unchecked(sr, a) == *a)
        .collect())
}

/// `{a + b | a in A, b in B}`.
pub fn ideal_sum(
    sr: &FiniteSemiring,
    a: &ElementSubset,
    b: &ElementSubset,
) -> Result<ElementSubset, Error> {
    check_width(sr, a)?;
    check_width(sr, b)?;
    if !is_ideal(sr, a) || !is_ideal(sr, b) {
        return Err(Error::NotAnIdeal);
    }
    let sum = ElementSubset::from_indices(
        sr.order(),
        a.iter().flat_map(|x| b.iter().map(move |y| (x, y))).map(|(x, y)| sr.add(x, y)),
    );
    assert!(is_ideal(sr, &sum), "sum of ideals is an ideal");
    Ok(sum)
}

/// Least ideal containing `s`: the least fixed point of
/// `S -> S u (S+S) u RS u SR`.
pub fn generated_ideal(sr: &FiniteSemiring, s: &ElementSubset) -> Result<ElementSubset, Error> {
    check_width(sr, s)?;
    if s.is_empty() {
        return Err(Error::NotAnIdeal);
    }
    let k = sr.order();
    let mut current = *s;
    loop {
        let mut next = current;
        for a in current.iter() {
            for b in current.iter() {
                next.insert(sr.add(a, b));
            }
            for r in 0..k {
                next.insert(sr.mul(r, a));
                next.insert(sr.mul(a, r));
            }
        }
        if next == current {
            debug_assert!(is_ideal(sr, &current));
            return Ok(current);
        }
        current = next;
    }
}

/// `{x | x <= r}` under the natural order.
pub fn down_set(sr: &FiniteSemiring, r: ElementId) -> Result<ElementSubset, Error> {
    let order = sr.natural_leq()?;
    let k = sr.order();
    let set = ElementSubset::from_indices(k, (0..k).filter(|&x| order.leq(x, r.0)));
    if sr.is_incline() {
        assert!(is_k_ideal(sr, &set), "down-sets of an incline are k-ideals");
    }
    Ok(set)
}

/// Whether `s` is `R` itself or, when a zero exists, `{0}`.
pub fn is_trivial_ideal(sr: &FiniteSemiring, s: &ElementSubset) -> bool {
    s.is_full() || sr.find_zero().is_some_and(|z| *s == ElementSubset::singleton(sr.order(), z))
}

/// For an incline of order at least 3, the down-set of the lowest-index
/// element that is neither maximal nor minimal. That set is a proper k-ideal
/// different from `{0}`.
pub fn find_nontrivial_k_ideal(sr: &FiniteSemiring) -> Result<Option<ElementSubset>, Error> {
    if !sr.is_incline() {
        return Err(Error::NotAnIncline);
    }
    if sr.order() <= 2 {
        return Ok(None);
    }
    let ext = sr.extremal_elements()?;
    let r = (0..sr.order())
        .map(ElementId)
        .find(|e| !ext.maximal.contains(e) && !ext.minimal.contains(e))
        .expect("an incline with at least three elements has a non-extremal element");
    let witness = down_set(sr, r)?;
    assert!(!is_trivial_ideal(sr, &witness));
    Ok(Some(witness))
}

/// No k-ideals other than `R` and `{0}`.
pub fn is_k_simple(sr: &FiniteSemiring) -> Result<bool, Error> {
    Ok(enumerate_k_ideals(sr)?.iter().all(|a| is_trivial_ideal(sr, a)))
}

/// No ideals other than `R` and `{0}`.
pub fn is_ideal_free(sr: &FiniteSemiring) -> Result<bool, Error> {
    Ok(enumerate_ideals(sr)?.iter().all(|a| is_trivial_ideal(sr, a)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::specfmt::zn_ring;

    fn set(sr: &FiniteSemiring, names: &[&str]) -> ElementSubset {
        ElementSubset::from_names(sr, names).unwrap()
    }

    /// Direct transcription of the closure definition over all (x, a, b).
    fn closure_oracle(sr: &FiniteSemiring, a: &ElementSubset) -> ElementSubset {
        let k = sr.order();
        let mut out = ElementSubset::empty(k);
        for x in 0..k {
            for p in 0..k {
                for q in 0..k {
                    if a.contains(p) && a.contains(q) && sr.add(x, p) == q {
                        out.insert(x);
                    }
                }
            }
        }
        out
    }

    #[test]
    fn ideal_membership() {
        let ex34 = fixtures::fig1_example34();
        assert!(is_ideal(&ex34, &set(&ex34, &["0", "a"])));
        assert!(is_ideal(&ex34, &set(&ex34, &["0"])));
        let ex35 = fixtures::fig2_example35();
        assert!(!is_ideal(&ex35, &set(&ex35, &["a"])));
        assert!(!is_ideal(&ex35, &ElementSubset::empty(5)));
    }

    #[test]
    fn closures_match_definition() {
        let ex34 = fixtures::fig1_example34();
        let a = set(&ex34, &["0", "a"]);
        assert_eq!(closure_oracle(&ex34, &a), a);
        assert_eq!(k_closure(&ex34, &a).unwrap(), a);

        let r0 = fixtures::r0();
        let zero = set(&r0, &["0"]);
        assert_eq!(k_closure(&r0, &zero).unwrap(), zero);

        let ex35 = fixtures::fig2_example35();
        let oc = set(&ex35, &["0", "c"]);
        assert_eq!(closure_oracle(&ex35, &oc), oc);
        assert_eq!(k_closure(&ex35, &oc).unwrap(), oc);

        assert_eq!(k_closure(&ex35, &set(&ex35, &["a"])), Err(Error::NotAnIdeal));

        for (_, sr) in fixtures::catalogue() {
            if sr.order() > MAX_IDEAL_SCAN_ORDER {
                continue;
            }
            for a in enumerate_ideals(&sr).unwrap() {
                assert_eq!(k_closure(&sr, &a).unwrap(), closure_oracle(&sr, &a));
            }
        }
    }

    #[test]
    fn k_ideal_examples() {
        let ex34 = fixtures::fig1_example34();
        assert!(is_k_ideal(&ex34, &set(&ex34, &["0", "a"])));
        assert!(is_k_ideal(&ex34, &ElementSubset::full(6)));
        assert!(is_k_ideal(&ex34, &set(&ex34, &["0"])));
        let k_ideals = enumerate_k_ideals(&ex34).unwrap();
        assert!(k_ideals.contains(&set(&ex34, &["0", "a"])));
    }

    #[test]
    fn enumeration_counts() {
        let r0 = fixtures::r0();
        assert_eq!(
            enumerate_ideals(&r0).unwrap(),
            vec![set(&r0, &["0"]), ElementSubset::full(2)]
        );
        let z4 = zn_ring(4).unwrap();
        let ideals = enumerate_ideals(&z4).unwrap();
        assert_eq!(
            ideals,
            vec![set(&z4, &["0"]), set(&z4, &["0", "2"]), ElementSubset::full(4)]
        );
        assert_eq!(enumerate_k_ideals(&z4).unwrap().len(), 3);
        let r1 = fixtures::r1();
        assert_eq!(
            enumerate_k_ideals(&r1).unwrap(),
            vec![set(&r1, &["0"]), ElementSubset::full(2)]
        );
    }

    #[test]
    fn distributive_lattice_ideals_are_join_closed_down_sets() {
        // In a lattice with join as addition and meet as multiplication the
        // ideals are exactly the nonempty join-closed down-sets.
        let ex35 = fixtures::fig2_example35();
        let ord = ex35.natural_leq().unwrap();
        let k = ex35.order();
        let mut expected = Vec::new();
        for bits in 1u64..1 << k {
            let s = ElementSubset::from_bits(k, bits);
            let down = s.iter().all(|x| (0..k).all(|y| !ord.leq(y, x) || s.contains(y)));
            let joins = s.iter().all(|x| s.iter().all(|y| s.contains(ex35.add(x, y))));
            if down && joins {
                expected.push(s);
            }
        }
        assert_eq!(enumerate_ideals(&ex35).unwrap(), expected);
        // {0}, {0,c}, {0,c,a}, {0,c,b}, R
        assert_eq!(expected.len(), 5);
    }

    #[test]
    fn sums() {
        let ex34 = fixtures::fig1_example34();
        let a = set(&ex34, &["0", "a"]);
        assert_eq!(ideal_sum(&ex34, &a, &a).unwrap(), a);
        let z6 = zn_ring(6).unwrap();
        let s = ideal_sum(&z6, &set(&z6, &["0", "2", "4"]), &set(&z6, &["0", "3"])).unwrap();
        assert!(s.is_full());
        for (_, sr) in fixtures::catalogue() {
            if !sr.is_additively_idempotent() || sr.order() > MAX_IDEAL_SCAN_ORDER {
                continue;
            }
            for a in enumerate_ideals(&sr).unwrap() {
                assert_eq!(ideal_sum(&sr, &a, &a).unwrap(), a);
            }
        }
    }

    #[test]
    fn generated() {
        let ex34 = fixtures::fig1_example34();
        assert_eq!(
            generated_ideal(&ex34, &set(&ex34, &["d"])).unwrap(),
            set(&ex34, &["0", "d"])
        );
        assert_eq!(
            generated_ideal(&ex34, &set(&ex34, &["0"])).unwrap(),
            set(&ex34, &["0"])
        );
        let r1 = fixtures::r1();
        assert!(generated_ideal(&r1, &set(&r1, &["1"])).unwrap().is_full());
        // The generated ideal is the least ideal containing the seed.
        for (_, sr) in fixtures::catalogue() {
            if sr.order() > 8 {
                continue;
            }
            let ideals = enumerate_ideals(&sr).unwrap();
            for x in 0..sr.order() {
                let seed = ElementSubset::from_indices(sr.order(), [x]);
                let least = ideals
                    .iter()
                    .filter(|i| seed.is_subset_of(i))
                    .min_by_key(|i| i.len())
                    .unwrap();
                assert!(ideals.iter().filter(|i| seed.is_subset_of(i)).all(|i| least.is_subset_of(i)));
                assert_eq!(generated_ideal(&sr, &seed).unwrap(), *least);
            }
        }
    }

    #[test]
    fn down_sets_and_witnesses() {
        let ex35 = fixtures::fig2_example35();
        let c = ex35.element_by_name("c").unwrap();
        assert_eq!(down_set(&ex35, c).unwrap(), set(&ex35, &["0", "c"]));
        assert_eq!(down_set(&ex35, ElementId(0)).unwrap(), set(&ex35, &["0"]));
        let one = ex35.element_by_name("1").unwrap();
        assert!(down_set(&ex35, one).unwrap().is_full());

        // Lowest-index non-extremal element of 0,a,b,c,1 is a.
        assert_eq!(
            find_nontrivial_k_ideal(&ex35).unwrap(),
            Some(set(&ex35, &["0", "a", "c"]))
        );
        assert_eq!(find_nontrivial_k_ideal(&fixtures::r0()).unwrap(), None);
        let chain = fixtures::chain3();
        assert_eq!(
            find_nontrivial_k_ideal(&chain).unwrap(),
            Some(set(&chain, &["0", "m"]))
        );
        assert_eq!(
            find_nontrivial_k_ideal(&zn_ring(3).unwrap()),
            Err(Error::NotAnIncline)
        );
        assert_eq!(
            down_set(&zn_ring(3).unwrap(), ElementId(0)),
            Err(Error::NotAdditivelyIdempotent)
        );
    }

    #[test]
    fn simplicity() {
        assert!(is_k_simple(&fixtures::r0()).unwrap());
        assert!(is_k_simple(&fixtures::r1()).unwrap());
        assert!(!is_k_simple(&fixtures::fig1_example34()).unwrap());
        assert!(!is_k_simple(&zn_ring(4).unwrap()).unwrap());
        assert!(is_ideal_free(&fixtures::r0()).unwrap());
        assert!(!is_ideal_free(&fixtures::fig1_example34()).unwrap());
        assert!(is_ideal_free(&zn_ring(2).unwrap()).unwrap());
    }

    #[test]
    fn closure_laws_on_fixtures() {
        for (_, sr) in fixtures::catalogue() {
            if sr.order() > MAX_IDEAL_SCAN_ORDER {
                continue;
            }
            let ideals = enumerate_ideals(&sr).unwrap();
            let k_ideals = enumerate_k_ideals(&sr).unwrap();
            assert!(ideals.contains(&ElementSubset::full(sr.order())));
            assert!(k_ideals.contains(&ElementSubset::full(sr.order())));
            assert!(k_ideals.iter().all(|a| ideals.contains(a)));
            for a in &ideals {
                let ca = k_closure(&sr, a).unwrap();
                assert!(a.is_subset_of(&ca));
                assert!(is_k_ideal(&sr, &ca));
                assert_eq!(k_closure(&sr, &ca).unwrap(), ca);
                for b in &ideals {
                    if a.is_subset_of(b) {
                        assert!(ca.is_subset_of(&k_closure(&sr, b).unwrap()));
                    }
                }
            }
        }
    }
}
