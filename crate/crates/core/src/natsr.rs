//! Finitely generated ideals of the semiring of nonnegative integers.
//!
//! The ideal generated by `g1, ..., gm` is the set of nonnegative integer
//! combinations of the generators. Membership is decided by a reachability
//! table; subtractive closure is decidable because each such ideal contains
//! every large enough multiple of the generators' gcd.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Upper bound on generators, queried integers and table spans.
pub const NAT_LIMIT: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NatError {
    #[error("an ideal needs at least one generator")]
    NoGenerators,
    #[error("generators must be positive")]
    ZeroGenerator,
    #[error("{value} exceeds the supported limit {limit}")]
    OutOfRange { value: u64, limit: u64 },
}

fn check_range(value: u64) -> Result<(), NatError> {
    if value > NAT_LIMIT {
        return Err(NatError::OutOfRange {
            value,
            limit: NAT_LIMIT,
        });
    }
    Ok(())
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Membership table for `0..=upto`.
fn reachable(gens: &[u64], upto: u64) -> Vec<bool> {
    let mut table = vec![false; upto as usize + 1];
    table[0] = true;
    for x in 1..=upto as usize {
        table[x] = gens.iter().any(|&g| g as usize <= x && table[x - g as usize]);
    }
    table
}

/// A finitely generated ideal, stored by its minimal generating set.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NatIdeal {
    generators: Vec<u64>,
}

impl NatIdeal {
    /// Drops generators that are combinations of smaller ones.
    pub fn new(gens: &[u64]) -> Result<Self, NatError> {
        if gens.is_empty() {
            return Err(NatError::NoGenerators);
        }
        if gens.contains(&0) {
            return Err(NatError::ZeroGenerator);
        }
        for &g in gens {
            check_range(g)?;
        }
        let mut sorted = gens.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let mut minimal: Vec<u64> = Vec::new();
        for g in sorted {
            if !reachable(&minimal, g)[g as usize] {
                minimal.push(g);
            }
        }
        Ok(NatIdeal { generators: minimal })
    }

    /// The principal ideal `nN`.
    pub fn principal(n: u64) -> Result<Self, NatError> {
        Self::new(&[n])
    }

    pub fn generators(&self) -> &[u64] {
        &self.generators
    }

    pub fn gcd(&self) -> u64 {
        self.generators.iter().fold(0, |a, &b| gcd(a, b))
    }

    /// Least `c` such that every multiple of the gcd that is at least `c`
    /// belongs to the ideal. The table spans `g * max * min` of the
    /// gcd-reduced generators, which bounds the largest gap.
    pub fn conductor(&self) -> Result<u64, NatError> {
        let g = self.gcd();
        let lo = self.generators[0] / g;
        let hi = self.generators[self.generators.len() - 1] / g;
        let span = g.saturating_mul(lo).saturating_mul(hi);
        check_range(span)?;
        let table = reachable(&self.generators, span);
        let last_gap = (0..=span).rev().find(|&m| m % g == 0 && !table[m as usize]);
        Ok(last_gap.map_or(0, |m| m + g))
    }

    pub fn display(&self) -> String {
        self.generators
            .iter()
            .map(|g| format!("({g})"))
            .collect::<Vec<_>>()
            .join("+")
    }
}

pub fn nat_contains(ideal: &NatIdeal, x: u64) -> Result<bool, NatError> {
    check_range(x)?;
    Ok(reachable(&ideal.generators, x)[x as usize])
}

/// `{a + b | a in I, b in J}`, generated by the union of the generators.
pub fn nat_sum(i: &NatIdeal, j: &NatIdeal) -> NatIdeal {
    let gens: Vec<u64> = i.generators.iter().chain(&j.generators).copied().collect();
    NatIdeal::new(&gens).expect("union of valid generator sets")
}

/// Smallest `a` in the ideal with `x + a` in the ideal. Any witness can be
/// shifted below `x + conductor`, so the search is complete.
pub fn nat_k_closure_witness(ideal: &NatIdeal, x: u64) -> Result<Option<u64>, NatError> {
    check_range(x)?;
    let bound = x + ideal.conductor()?;
    check_range(x + bound)?;
    let table = reachable(&ideal.generators, x + bound);
    Ok((0..=bound).find(|&a| table[a as usize] && table[(x + a) as usize]))
}

pub fn nat_in_k_closure(ideal: &NatIdeal, x: u64) -> Result<bool, NatError> {
    Ok(nat_k_closure_witness(ideal, x)?.is_some())
}

/// Whether `a` shows that `x` is in the closure: `a` and `x + a` are members.
pub fn is_k_closure_witness(ideal: &NatIdeal, x: u64, a: u64) -> Result<bool, NatError> {
    Ok(nat_contains(ideal, a)? && nat_contains(ideal, x + a)?)
}

/// Smallest `x <= bound` in the closure but not in the ideal.
pub fn nat_is_k_closed_upto(ideal: &NatIdeal, bound: u64) -> Result<Option<u64>, NatError> {
    check_range(bound)?;
    let c = ideal.conductor()?;
    let top = 2 * bound + c;
    check_range(top)?;
    let table = reachable(&ideal.generators, top);
    Ok((0..=bound).find(|&x| {
        !table[x as usize] && (0..=x + c).any(|a| table[a as usize] && table[(x + a) as usize])
    }))
}

/// Reference membership by direct enumeration of coefficient vectors.
pub mod oracle {
    pub fn brute_force_contains(gens: &[u64], x: u64) -> bool {
        fn go(gens: &[u64], x: u64) -> bool {
            match gens.split_first() {
                None => x == 0,
                Some((&g, rest)) => (0..=x / g).any(|c| go(rest, x - c * g)),
            }
        }
        go(gens, x)
    }
}
