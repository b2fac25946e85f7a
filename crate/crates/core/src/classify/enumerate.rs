use std::collections::BTreeMap;
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::iso::{canonical_key, CanonicalKey};
use crate::error::Error;
use crate::kernel::{FiniteSemiring, OpTable};

/// Filters applied during enumeration. All `false` means unconstrained.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Constraints {
    pub additively_idempotent: bool,
    pub commutative_mul: bool,
    pub incline: bool,
    pub with_zero: bool,
    pub ring: bool,
}

impl Constraints {
    pub fn none() -> Self {
        Self::default()
    }

    pub fn incline() -> Self {
        Constraints {
            incline: true,
            ..Self::default()
        }
    }

    pub fn additively_idempotent() -> Self {
        Constraints {
            additively_idempotent: true,
            ..Self::default()
        }
    }

    /// Addition is forced to be idempotent.
    pub fn idempotent_addition(&self) -> bool {
        self.additively_idempotent || self.incline
    }

    pub fn is_unconstrained(&self) -> bool {
        *self == Self::default()
    }

    pub fn admits(&self, sr: &FiniteSemiring) -> bool {
        (!self.additively_idempotent || sr.is_additively_idempotent())
            && (!self.commutative_mul || sr.is_commutative_mul())
            && (!self.incline || sr.is_incline())
            && (!self.with_zero || sr.find_zero().is_some())
            && (!self.ring || sr.is_ring())
    }

    /// Comma-separated flag names, or `none`.
    pub fn label(&self) -> String {
        let names: Vec<&str> = [
            (self.additively_idempotent, "additively-idempotent"),
            (self.commutative_mul, "commutative-mul"),
            (self.incline, "incline"),
            (self.with_zero, "with-zero"),
            (self.ring, "ring"),
        ]
        .iter()
        .filter(|(on, _)| *on)
        .map(|(_, n)| *n)
        .collect();
        if names.is_empty() {
            "none".into()
        } else {
            names.join(",")
        }
    }
}

/// Largest order with unconstrained enumeration.
pub const MAX_UNCONSTRAINED_ORDER: usize = 3;
/// Largest order when addition is required to be idempotent.
pub const MAX_IDEMPOTENT_ORDER: usize = 4;

pub fn check_supported(order: usize, constraints: &Constraints) -> Result<(), Error> {
    if order == 0 {
        return Err(Error::Unsupported("order must be at least 1".into()));
    }
    if order <= MAX_UNCONSTRAINED_ORDER {
        return Ok(());
    }
    if constraints.idempotent_addition() {
        if order <= MAX_IDEMPOTENT_ORDER {
            return Ok(());
        }
        return Err(Error::OrderTooLarge {
            operation: "semiring enumeration with idempotent addition",
            order,
            max: MAX_IDEMPOTENT_ORDER,
        });
    }
    Err(Error::OrderTooLarge {
        operation: "semiring enumeration without idempotent addition",
        order,
        max: MAX_UNCONSTRAINED_ORDER,
    })
}

const UNSET: u8 = u8::MAX;

// Every triple whose four lookups are all assigned must associate.
fn partial_associative(t: &[u8], k: usize) -> bool {
    for x in 0..k {
        for y in 0..k {
            let xy = t[x * k + y];
            if xy == UNSET {
                continue;
            }
            for z in 0..k {
                let yz = t[y * k + z];
                if yz == UNSET {
                    continue;
                }
                let l = t[xy as usize * k + z];
                let r = t[x * k + yz as usize];
                if l != UNSET && r != UNSET && l != r {
                    return false;
                }
            }
        }
    }
    true
}

fn fill_associative(t: &mut Vec<u8>, k: usize, pos: usize, out: &mut Vec<OpTable>) {
    if pos == k * k {
        out.push(OpTable::from_bytes(k, t.clone()));
        return;
    }
    for v in 0..k as u8 {
        t[pos] = v;
        if partial_associative(t, k) {
            fill_associative(t, k, pos + 1, out);
        }
    }
    t[pos] = UNSET;
}

/// Every associative operation on `0..k`, labelled (not up to isomorphism),
/// in lexicographic row-major order.
pub fn associative_tables(k: usize) -> &'static [OpTable] {
    static CACHE: [OnceLock<Vec<OpTable>>; MAX_IDEMPOTENT_ORDER + 1] =
        [OnceLock::new(), OnceLock::new(), OnceLock::new(), OnceLock::new(), OnceLock::new()];
    assert!((1..=MAX_IDEMPOTENT_ORDER).contains(&k), "associative tables only up to order 4");
    CACHE[k].get_or_init(|| {
        let mut out = Vec::new();
        fill_associative(&mut vec![UNSET; k * k], k, 0, &mut out);
        out
    })
}

fn distributes(add: &OpTable, mul: &OpTable) -> bool {
    let k = add.size();
    for x in 0..k {
        for y in 0..k {
            for z in 0..k {
                let s = add.get(y, z);
                if mul.get(x, s) != add.get(mul.get(x, y), mul.get(x, z))
                    || mul.get(s, x) != add.get(mul.get(y, x), mul.get(z, x))
                {
                    return false;
                }
            }
        }
    }
    true
}

fn from_key(key: &CanonicalKey, name: String) -> FiniteSemiring {
    let k = key.order();
    FiniteSemiring::with_numeric_names(
        name,
        OpTable::from_bytes(k, key.add_entries().to_vec()),
        OpTable::from_bytes(k, key.mul_entries().to_vec()),
    )
    .expect("enumerated tables satisfy the laws")
}

/// Canonical keys of all semirings of `order` meeting `constraints`, sorted.
pub fn enumerate_keys(order: usize, constraints: &Constraints) -> Result<Vec<CanonicalKey>, Error> {
    check_supported(order, constraints)?;
    let all = associative_tables(order);
    let additions: Vec<&OpTable> = all
        .iter()
        .filter(|t| t.is_commutative() && (!constraints.idempotent_addition() || t.is_idempotent()))
        .collect();
    let found: Vec<Vec<CanonicalKey>> = additions
        .par_iter()
        .map(|add| {
            all.iter()
                .filter(|mul| distributes(add, mul))
                .filter_map(|mul| {
                    let sr = FiniteSemiring::with_numeric_names("candidate", (*add).clone(), mul.clone())
                        .expect("associative, commutative and distributive");
                    constraints.admits(&sr).then(|| canonical_key(&sr).expect("order within bound"))
                })
                .collect()
        })
        .collect();
    let mut keys: BTreeMap<CanonicalKey, ()> = BTreeMap::new();
    for key in found.into_iter().flatten() {
        keys.insert(key, ());
    }
    Ok(keys.into_keys().collect())
}

/// One canonical representative per isomorphism class, ordered by canonical
/// key. Representatives are named `o<order>-<index>`.
pub fn enumerate_semirings(order: usize, constraints: &Constraints) -> Result<Vec<FiniteSemiring>, Error> {
    Ok(enumerate_keys(order, constraints)?
        .iter()
        .enumerate()
        .map(|(i, key)| from_key(key, format!("o{order}-{i}")))
        .collect())
}

pub fn enumerate_inclines(order: usize) -> Result<Vec<FiniteSemiring>, Error> {
    enumerate_semirings(order, &Constraints::incline())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::iso::are_isomorphic;
    use crate::fixtures;
    use crate::kernel::validate;
    use crate::specfmt::zn_ring;

    /// Brute force over all k^(k*k) tables.
    fn associative_by_brute_force(k: usize) -> Vec<Vec<u8>> {
        let cells = k * k;
        let total = k.pow(cells as u32);
        let mut out = Vec::new();
        for code in 0..total {
            let mut c = code;
            let t: Vec<u8> = (0..cells)
                .map(|_| {
                    let v = (c % k) as u8;
                    c /= k;
                    v
                })
                .rev()
                .collect();
            if OpTable::from_bytes(k, t.clone()).is_associative() {
                out.push(t);
            }
        }
        out.sort();
        out
    }

    #[test]
    fn associative_tables_match_brute_force() {
        for k in 1..=3 {
            let got: Vec<Vec<u8>> = associative_tables(k).iter().map(|t| t.bytes().to_vec()).collect();
            assert_eq!(got, associative_by_brute_force(k), "order {k}");
        }
        // Labelled semigroup counts 1, 8, 113, 3492.
        assert_eq!(associative_tables(2).len(), 8);
        assert_eq!(associative_tables(3).len(), 113);
        assert_eq!(associative_tables(4).len(), 3492);
    }

    /// Order-2 census straight from the 16 x 16 table pairs.
    fn order2_classes_by_brute_force(constraints: &Constraints) -> Vec<FiniteSemiring> {
        let mut reps: Vec<FiniteSemiring> = Vec::new();
        for a in 0..16usize {
            for m in 0..16usize {
                let add = OpTable::new(2, (0..4).map(|b| (a >> b) & 1).collect()).unwrap();
                let mul = OpTable::new(2, (0..4).map(|b| (m >> b) & 1).collect()).unwrap();
                if !validate(&add, &mul).unwrap().valid {
                    continue;
                }
                let sr = FiniteSemiring::with_numeric_names("b", add, mul).unwrap();
                if constraints.admits(&sr) && !reps.iter().any(|r| are_isomorphic(r, &sr).is_some()) {
                    reps.push(sr);
                }
            }
        }
        reps
    }

    #[test]
    fn order_two_matches_table_scan() {
        for c in [Constraints::none(), Constraints::incline(), Constraints::additively_idempotent()] {
            let got = enumerate_semirings(2, &c).unwrap();
            let brute = order2_classes_by_brute_force(&c);
            assert_eq!(got.len(), brute.len(), "{}", c.label());
            for b in &brute {
                assert_eq!(got.iter().filter(|g| are_isomorphic(g, b).is_some()).count(), 1);
            }
        }
    }

    #[test]
    fn two_element_inclines() {
        let inclines = enumerate_inclines(2).unwrap();
        assert_eq!(inclines.len(), 2);
        let keys: Vec<CanonicalKey> = inclines.iter().map(|s| canonical_key(s).unwrap()).collect();
        let mut expected = vec![canonical_key(&fixtures::r0()).unwrap(), canonical_key(&fixtures::r1()).unwrap()];
        expected.sort();
        assert_eq!(keys, expected);
        assert_eq!(enumerate_inclines(1).unwrap().len(), 1);
    }

    #[test]
    fn enumerated_are_valid_and_distinct() {
        for c in [Constraints::none(), Constraints::incline()] {
            let list = enumerate_semirings(3, &c).unwrap();
            for (i, a) in list.iter().enumerate() {
                assert!(validate(a.add_table(), a.mul_table()).unwrap().valid);
                assert!(c.admits(a));
                for b in &list[..i] {
                    assert!(are_isomorphic(a, b).is_none());
                }
            }
        }
    }

    #[test]
    fn rings_of_order_two_and_three() {
        let rings2 = enumerate_semirings(2, &Constraints { ring: true, ..Constraints::none() }).unwrap();
        // Z2 and the zero-multiplication ring on Z2.
        assert_eq!(rings2.len(), 2);
        assert!(rings2.iter().any(|r| are_isomorphic(r, &zn_ring(2).unwrap()).is_some()));
        let rings3 = enumerate_semirings(3, &Constraints { ring: true, ..Constraints::none() }).unwrap();
        assert_eq!(rings3.len(), 2);
    }

    #[test]
    fn bounds() {
        assert!(matches!(
            enumerate_semirings(4, &Constraints::none()),
            Err(Error::OrderTooLarge { max: 3, .. })
        ));
        assert!(matches!(
            enumerate_semirings(5, &Constraints::incline()),
            Err(Error::OrderTooLarge { max: 4, .. })
        ));
        assert!(enumerate_semirings(0, &Constraints::none()).is_err());
    }
}
