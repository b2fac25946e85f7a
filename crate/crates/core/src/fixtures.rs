//! Shipped fixture semirings and a few generated instances.
//!
//! The four text fixtures live under `fixtures/` and are compiled in. The
//! [`catalogue`] adds generated instances that exercise cases the text
//! fixtures do not: zero-free carriers, rings, a non-commutative
//! multiplication, and ideals that are not subtractively closed.

use crate::kernel::{FiniteSemiring, OpTable};
use crate::specfmt::{parse_semiring, zn_ring};

pub const FIG1_EXAMPLE34: &str = include_str!("../fixtures/fig1_example34.sr");
pub const FIG2_EXAMPLE35: &str = include_str!("../fixtures/fig2_example35.sr");
pub const R0: &str = include_str!("../fixtures/r0.sr");
pub const R1: &str = include_str!("../fixtures/r1.sr");

/// Shipped fixture names and their text, in a fixed order.
pub const SHIPPED: [(&str, &str); 4] = [
    ("fig1_example34", FIG1_EXAMPLE34),
    ("fig2_example35", FIG2_EXAMPLE35),
    ("r0", R0),
    ("r1", R1),
];

fn shipped(text: &str) -> FiniteSemiring {
    parse_semiring(text).expect("shipped fixture parses")
}

/// Non-distributive six-element lattice under join, with `x*y = d` on the
/// up-set of `d` and `0` elsewhere.
pub fn fig1_example34() -> FiniteSemiring {
    shipped(FIG1_EXAMPLE34)
}

/// Five-element distributive lattice under join and meet.
pub fn fig2_example35() -> FiniteSemiring {
    shipped(FIG2_EXAMPLE35)
}

pub fn r0() -> FiniteSemiring {
    shipped(R0)
}

pub fn r1() -> FiniteSemiring {
    shipped(R1)
}

/// The chain `0 < m < 1` with max and min.
pub fn chain3() -> FiniteSemiring {
    FiniteSemiring::new(
        "chain3",
        vec!["0".into(), "m".into(), "1".into()],
        OpTable::from_fn(3, |i, j| i.max(j)).unwrap(),
        OpTable::from_fn(3, |i, j| i.min(j)).unwrap(),
    )
    .unwrap()
}

/// `({1,2}, max, max)`: additively neutral `1` does not absorb, so there is
/// no zero.
pub fn max2() -> FiniteSemiring {
    FiniteSemiring::new(
        "max2",
        vec!["1".into(), "2".into()],
        OpTable::from_fn(2, |i, j| i.max(j)).unwrap(),
        OpTable::from_fn(2, |i, j| i.max(j)).unwrap(),
    )
    .unwrap()
}

/// Nonnegative integers with every value `>= cap` identified with `cap`.
pub fn capped_nat(cap: usize) -> FiniteSemiring {
    let k = cap + 1;
    FiniteSemiring::with_numeric_names(
        format!("nat_cap{cap}"),
        OpTable::from_fn(k, |i, j| (i + j).min(cap)).unwrap(),
        OpTable::from_fn(k, |i, j| (i * j).min(cap)).unwrap(),
    )
    .unwrap()
}

/// Upper-triangular 2x2 boolean matrices `[a b; 0 c]`, named `uABC`.
pub fn upper_triangular_bool() -> FiniteSemiring {
    let decode = |e: usize| ((e >> 2) & 1, (e >> 1) & 1, e & 1);
    let encode = |(a, b, c): (usize, usize, usize)| a << 2 | b << 1 | c;
    let add = OpTable::from_fn(8, |x, y| x | y).unwrap();
    let mul = OpTable::from_fn(8, |x, y| {
        let (a, b, c) = decode(x);
        let (d, e, f) = decode(y);
        encode((a & d, (a & e) | (b & f), c & f))
    })
    .unwrap();
    let names = (0..8)
        .map(|e| {
            let (a, b, c) = decode(e);
            format!("u{a}{b}{c}")
        })
        .collect();
    FiniteSemiring::new("upper_bool2", names, add, mul).unwrap()
}

/// Every fixture used by the law and verification checks.
pub fn catalogue() -> Vec<(String, FiniteSemiring)> {
    let mut out: Vec<(String, FiniteSemiring)> = SHIPPED
        .iter()
        .map(|(name, text)| (name.to_string(), shipped(text)))
        .collect();
    let generated = [
        chain3(),
        max2(),
        capped_nat(4),
        zn_ring(2).unwrap(),
        zn_ring(3).unwrap(),
        zn_ring(4).unwrap(),
        zn_ring(6).unwrap(),
        upper_triangular_bool(),
    ];
    out.extend(generated.into_iter().map(|sr| (sr.name().to_string(), sr)));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalogue_builds() {
        let cat = catalogue();
        assert_eq!(cat.len(), 12);
        for (name, sr) in &cat {
            assert_eq!(name, sr.name());
        }
    }

    #[test]
    fn upper_triangular_is_not_commutative() {
        let u = upper_triangular_bool();
        assert!(!u.is_commutative_mul());
        assert!(u.find_zero().is_some());
        assert_eq!(u.find_identity().map(|e| u.element_name(e).to_string()), Some("u101".into()));
    }

    #[test]
    fn lattice_fixtures_flags() {
        let f1 = fig1_example34();
        assert!(f1.is_additively_idempotent());
        assert!(f1.is_commutative_mul());
        let f2 = fig2_example35();
        assert!(f2.is_incline());
        assert_eq!(f2.find_identity().map(|e| f2.element_name(e).to_string()), Some("1".into()));
        assert_eq!(f1.find_zero().map(|e| f1.element_name(e).to_string()), Some("0".into()));
        let ext = f1.extremal_elements().unwrap();
        assert_eq!(ext.greatest.map(|e| f1.element_name(e).to_string()), Some("1".into()));
        assert_eq!(ext.least.map(|e| f1.element_name(e).to_string()), Some("0".into()));
    }
}
