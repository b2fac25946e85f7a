//! Finite semirings given by operation tables.
//!
//! Elements are dense indices `0..k`; display names only matter when parsing
//! and printing. A [`FiniteSemiring`] can only be built from tables that pass
//! [`validate`], so every value of that type satisfies the semiring laws:
//! commutative and associative addition, associative multiplication, and
//! two-sided distributivity.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::Error;

/// Largest carrier the table representation accepts. Subsets are `u64` masks.
pub const MAX_ORDER: usize = 64;

/// Index of a carrier element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ElementId(pub usize);

impl ElementId {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for ElementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// Malformed table input. Distinct from an axiom violation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructuralError {
    #[error("carrier is empty")]
    EmptyCarrier,
    #[error("carrier of size {0} exceeds the supported maximum of {MAX_ORDER}")]
    TooLarge(usize),
    #[error("table has {found} entries, expected {expected}")]
    SizeMismatch { expected: usize, found: usize },
    #[error("entry ({row},{col}) = {value} is outside 0..{size}")]
    EntryOutOfRange {
        row: usize,
        col: usize,
        value: usize,
        size: usize,
    },
    #[error("{names} element names for tables of size {size}")]
    NameCountMismatch { names: usize, size: usize },
    #[error("duplicate element name `{0}`")]
    DuplicateName(String),
}

/// A `k x k` operation table; `get(i, j)` is `e_i op e_j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OpTable {
    size: usize,
    entries: Vec<u8>,
}

impl OpTable {
    /// Builds a table from row-major entries.
    pub fn new(size: usize, entries: Vec<usize>) -> Result<Self, StructuralError> {
        if size == 0 {
            return Err(StructuralError::EmptyCarrier);
        }
        if size > MAX_ORDER {
            return Err(StructuralError::TooLarge(size));
        }
        if entries.len() != size * size {
            return Err(StructuralError::SizeMismatch {
                expected: size * size,
                found: entries.len(),
            });
        }
        let mut packed = Vec::with_capacity(entries.len());
        for (pos, &value) in entries.iter().enumerate() {
            if value >= size {
                return Err(StructuralError::EntryOutOfRange {
                    row: pos / size,
                    col: pos % size,
                    value,
                    size,
                });
            }
            packed.push(value as u8);
        }
        Ok(OpTable {
            size,
            entries: packed,
        })
    }

    pub fn from_rows(rows: &[Vec<usize>]) -> Result<Self, StructuralError> {
        let size = rows.len();
        for row in rows {
            if row.len() != size {
                return Err(StructuralError::SizeMismatch {
                    expected: size,
                    found: row.len(),
                });
            }
        }
        OpTable::new(size, rows.iter().flatten().copied().collect())
    }

    pub fn from_fn(size: usize, f: impl Fn(usize, usize) -> usize) -> Result<Self, StructuralError> {
        let mut entries = Vec::with_capacity(size * size);
        for i in 0..size {
            for j in 0..size {
                entries.push(f(i, j));
            }
        }
        OpTable::new(size, entries)
    }

    /// Trusted constructor for internally generated tables.
    pub(crate) fn from_bytes(size: usize, entries: Vec<u8>) -> Self {
        debug_assert_eq!(entries.len(), size * size);
        debug_assert!(entries.iter().all(|&e| (e as usize) < size));
        OpTable { size, entries }
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> usize {
        self.entries[i * self.size + j] as usize
    }

    pub fn bytes(&self) -> &[u8] {
        &self.entries
    }

    pub fn rows(&self) -> impl Iterator<Item = &[u8]> {
        self.entries.chunks(self.size)
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.size).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn is_associative(&self) -> bool {
        let k = self.size;
        (0..k).all(|x| {
            (0..k).all(|y| {
                let xy = self.get(x, y);
                (0..k).all(|z| self.get(xy, z) == self.get(x, self.get(y, z)))
            })
        })
    }

    pub fn is_idempotent(&self) -> bool {
        (0..self.size).all(|i| self.get(i, i) == i)
    }
}

/// A semiring law that tables can violate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Law {
    AddCommutative,
    AddAssociative,
    MulAssociative,
    LeftDistributive,
    RightDistributive,
}

impl Law {
    pub const ALL: [Law; 5] = [
        Law::AddCommutative,
        Law::AddAssociative,
        Law::MulAssociative,
        Law::LeftDistributive,
        Law::RightDistributive,
    ];

    pub fn equation(self) -> &'static str {
        match self {
            Law::AddCommutative => "x+y = y+x",
            Law::AddAssociative => "(x+y)+z = x+(y+z)",
            Law::MulAssociative => "(xy)z = x(yz)",
            Law::LeftDistributive => "x(y+z) = xy+xz",
            Law::RightDistributive => "(y+z)x = yx+zx",
        }
    }
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Law::AddCommutative => "additive commutativity",
            Law::AddAssociative => "additive associativity",
            Law::MulAssociative => "multiplicative associativity",
            Law::LeftDistributive => "left distributivity",
            Law::RightDistributive => "right distributivity",
        };
        write!(f, "{name}")
    }
}

/// A violated law with its lexicographically first witness `(x, y[, z])`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub law: Law,
    pub witness: Vec<ElementId>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub valid: bool,
    pub violations: Vec<Violation>,
    /// Additively neutral elements that fail to absorb multiplicatively.
    /// These are not zeros; listed for diagnosis only.
    pub neutral_non_absorbing: Vec<ElementId>,
}

impl AxiomReport {
    pub fn violation(&self, law: Law) -> Option<&Violation> {
        self.violations.iter().find(|v| v.law == law)
    }

    /// Renders the report using element names.
    pub fn render(&self, names: &[String]) -> String {
        let mut out = String::new();
        if self.valid {
            out.push_str("valid semiring\n");
        } else {
            out.push_str("NOT a semiring\n");
        }
        for v in &self.violations {
            let w: Vec<&str> = v.witness.iter().map(|e| names[e.0].as_str()).collect();
            let vars = ["x", "y", "z"];
            let binding: Vec<String> = w
                .iter()
                .zip(vars)
                .map(|(n, var)| format!("{var}={n}"))
                .collect();
            out.push_str(&format!(
                "  violated {} [{}] at {}\n",
                v.law,
                v.law.equation(),
                binding.join(", ")
            ));
        }
        for e in &self.neutral_non_absorbing {
            out.push_str(&format!(
                "  note: {} is additively neutral but not multiplicatively absorbing\n",
                names[e.0]
            ));
        }
        out
    }
}

fn first_pair(k: usize, mut bad: impl FnMut(usize, usize) -> bool) -> Option<Vec<ElementId>> {
    for x in 0..k {
        for y in 0..k {
            if bad(x, y) {
                return Some(vec![ElementId(x), ElementId(y)]);
            }
        }
    }
    None
}

fn first_triple(
    k: usize,
    mut bad: impl FnMut(usize, usize, usize) -> bool,
) -> Option<Vec<ElementId>> {
    for x in 0..k {
        for y in 0..k {
            for z in 0..k {
                if bad(x, y, z) {
                    return Some(vec![ElementId(x), ElementId(y), ElementId(z)]);
                }
            }
        }
    }
    None
}

/// Checks every semiring law on a pair of tables and reports each violated
/// law once, with its lexicographically first witness.
pub fn validate(add: &OpTable, mul: &OpTable) -> Result<AxiomReport, StructuralError> {
    if add.size() != mul.size() {
        return Err(StructuralError::SizeMismatch {
            expected: add.size() * add.size(),
            found: mul.size() * mul.size(),
        });
    }
    let k = add.size();
    let a = |x, y| add.get(x, y);
    let m = |x, y| mul.get(x, y);

    let mut violations = Vec::new();
    for law in Law::ALL {
        let witness = match law {
            Law::AddCommutative => first_pair(k, |x, y| a(x, y) != a(y, x)),
            Law::AddAssociative => first_triple(k, |x, y, z| a(a(x, y), z) != a(x, a(y, z))),
            Law::MulAssociative => first_triple(k, |x, y, z| m(m(x, y), z) != m(x, m(y, z))),
            Law::LeftDistributive => {
                first_triple(k, |x, y, z| m(x, a(y, z)) != a(m(x, y), m(x, z)))
            }
            Law::RightDistributive => {
                first_triple(k, |x, y, z| m(a(y, z), x) != a(m(y, x), m(z, x)))
            }
        };
        if let Some(witness) = witness {
            violations.push(Violation { law, witness });
        }
    }

    let neutral_non_absorbing = (0..k)
        .filter(|&e| (0..k).all(|r| a(e, r) == r))
        .filter(|&e| !(0..k).all(|r| m(e, r) == e && m(r, e) == e))
        .map(ElementId)
        .collect();

    Ok(AxiomReport {
        valid: violations.is_empty(),
        violations,
        neutral_non_absorbing,
    })
}

/// Reasons a semiring could not be constructed.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemiringError {
    #[error(transparent)]
    Structural(#[from] StructuralError),
    #[error("tables violate the semiring laws ({} violation(s))", .0.violations.len())]
    Axioms(AxiomReport),
}

/// Partial order matrix; `leq(x, y)` is `x <= y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderMatrix {
    size: usize,
    leq: Vec<bool>,
}

impl OrderMatrix {
    pub(crate) fn from_fn(size: usize, f: impl Fn(usize, usize) -> bool) -> Self {
        let mut leq = Vec::with_capacity(size * size);
        for x in 0..size {
            for y in 0..size {
                leq.push(f(x, y));
            }
        }
        OrderMatrix { size, leq }
    }

    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.leq[x * self.size + y]
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn is_partial_order(&self) -> bool {
        let k = self.size;
        let reflexive = (0..k).all(|x| self.leq(x, x));
        let antisymmetric =
            (0..k).all(|x| (0..k).all(|y| x == y || !(self.leq(x, y) && self.leq(y, x))));
        let transitive = (0..k).all(|x| {
            (0..k).all(|y| !self.leq(x, y) || (0..k).all(|z| !self.leq(y, z) || self.leq(x, z)))
        });
        reflexive && antisymmetric && transitive
    }

    /// Covering pairs `(x, y)` with `x < y` and nothing strictly between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let k = self.size;
        let lt = |x: usize, y: usize| x != y && self.leq(x, y);
        let mut out = Vec::new();
        for x in 0..k {
            for y in 0..k {
                if lt(x, y) && !(0..k).any(|z| lt(x, z) && lt(z, y)) {
                    out.push((x, y));
                }
            }
        }
        out
    }
}

/// Maximal, minimal, greatest and least elements under the natural order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Extremal {
    pub maximal: Vec<ElementId>,
    pub minimal: Vec<ElementId>,
    pub greatest: Option<ElementId>,
    pub least: Option<ElementId>,
}

/// A validated finite semiring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteSemiring {
    name: String,
    elements: Vec<String>,
    add: OpTable,
    mul: OpTable,
}

impl FiniteSemiring {
    pub fn new(
        name: impl Into<String>,
        elements: Vec<String>,
        add: OpTable,
        mul: OpTable,
    ) -> Result<Self, SemiringError> {
        if elements.len() != add.size() {
            return Err(StructuralError::NameCountMismatch {
                names: elements.len(),
                size: add.size(),
            }
            .into());
        }
        for (i, n) in elements.iter().enumerate() {
            if elements[..i].contains(n) {
                return Err(StructuralError::DuplicateName(n.clone()).into());
            }
        }
        let report = validate(&add, &mul)?;
        if !report.valid {
            return Err(SemiringError::Axioms(report));
        }
        Ok(FiniteSemiring {
            name: name.into(),
            elements,
            add,
            mul,
        })
    }

    /// Builds a semiring whose elements are named `0..k`.
    pub fn with_numeric_names(
        name: impl Into<String>,
        add: OpTable,
        mul: OpTable,
    ) -> Result<Self, SemiringError> {
        let names = (0..add.size()).map(|i| i.to_string()).collect();
        FiniteSemiring::new(name, names, add, mul)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn element_name(&self, e: ElementId) -> &str {
        &self.elements[e.0]
    }

    pub fn element_by_name(&self, name: &str) -> Option<ElementId> {
        self.elements.iter().position(|n| n == name).map(ElementId)
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// One-element semirings are representable but sit below the `|R| >= 2`
    /// convention; classification skips them.
    pub fn is_degenerate(&self) -> bool {
        self.order() < 2
    }

    pub fn add_table(&self) -> &OpTable {
        &self.add
    }

    pub fn mul_table(&self) -> &OpTable {
        &self.mul
    }

    #[inline]
    pub fn add(&self, x: usize, y: usize) -> usize {
        self.add.get(x, y)
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.mul.get(x, y)
    }

    /// The element that is additively neutral and multiplicatively absorbing.
    pub fn find_zero(&self) -> Option<ElementId> {
        let k = self.order();
        let zeros: Vec<usize> = (0..k)
            .filter(|&e| {
                (0..k).all(|r| self.add(e, r) == r && self.mul(e, r) == e && self.mul(r, e) == e)
            })
            .collect();
        assert!(zeros.len() <= 1, "additive neutral element is unique");
        zeros.first().copied().map(ElementId)
    }

    /// The two-sided multiplicative identity.
    pub fn find_identity(&self) -> Option<ElementId> {
        let k = self.order();
        let ones: Vec<usize> = (0..k)
            .filter(|&e| (0..k).all(|r| self.mul(e, r) == r && self.mul(r, e) == r))
            .collect();
        assert!(ones.len() <= 1, "two-sided identity is unique");
        ones.first().copied().map(ElementId)
    }

    pub fn is_additively_idempotent(&self) -> bool {
        self.add.is_idempotent()
    }

    pub fn is_commutative_mul(&self) -> bool {
        self.mul.is_commutative()
    }

    /// Additively idempotent with `x + xy = x = x + yx` for all `x, y`.
    pub fn is_incline(&self) -> bool {
        let k = self.order();
        self.is_additively_idempotent()
            && (0..k).all(|x| {
                (0..k).all(|y| self.add(x, self.mul(x, y)) == x && self.add(x, self.mul(y, x)) == x)
            })
    }

    /// Whether `(R, +)` is a group, i.e. the semiring is a ring.
    pub fn is_ring(&self) -> bool {
        let k = self.order();
        let Some(zero) = (0..k).find(|&e| (0..k).all(|r| self.add(e, r) == r)) else {
            return false;
        };
        (0..k).all(|x| (0..k).any(|y| self.add(x, y) == zero))
    }

    /// The natural order `x <= y  iff  x + y = y`.
    pub fn natural_leq(&self) -> Result<OrderMatrix, Error> {
        if !self.is_additively_idempotent() {
            return Err(Error::NotAdditivelyIdempotent);
        }
        let order = OrderMatrix::from_fn(self.order(), |x, y| self.add(x, y) == y);
        assert!(order.is_partial_order());
        Ok(order)
    }

    pub fn extremal_elements(&self) -> Result<Extremal, Error> {
        let order = self.natural_leq()?;
        let k = self.order();
        let lt = |x: usize, y: usize| x != y && order.leq(x, y);
        let maximal: Vec<ElementId> = (0..k)
            .filter(|&x| !(0..k).any(|y| lt(x, y)))
            .map(ElementId)
            .collect();
        let minimal: Vec<ElementId> = (0..k)
            .filter(|&x| !(0..k).any(|y| lt(y, x)))
            .map(ElementId)
            .collect();
        let greatest = (0..k).find(|&x| (0..k).all(|y| order.leq(y, x))).map(ElementId);
        let least = (0..k).find(|&x| (0..k).all(|y| order.leq(x, y))).map(ElementId);
        if self.is_incline() {
            assert!(maximal.len() <= 1 && (maximal.is_empty() || maximal.first() == greatest.as_ref()));
            assert!(minimal.len() <= 1 && (minimal.is_empty() || minimal.first() == least.as_ref()));
        }
        Ok(Extremal {
            maximal,
            minimal,
            greatest,
            least,
        })
    }

    /// Relabels the carrier: element `i` becomes `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> FiniteSemiring {
        let k = self.order();
        assert_eq!(perm.len(), k);
        let mut inv = vec![0; k];
        for (i, &p) in perm.iter().enumerate() {
            inv[p] = i;
        }
        let relabel = |t: &OpTable| {
            let bytes = (0..k * k)
                .map(|pos| perm[t.get(inv[pos / k], inv[pos % k])] as u8)
                .collect();
            OpTable::from_bytes(k, bytes)
        };
        FiniteSemiring {
            name: self.name.clone(),
            elements: inv.iter().map(|&i| self.elements[i].clone()).collect(),
            add: relabel(&self.add),
            mul: relabel(&self.mul),
        }
    }
}

impl fmt::Display for FiniteSemiring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (order {})", self.name, self.order())
    }
}
