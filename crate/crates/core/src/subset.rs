use std::fmt;

use crate::kernel::{ElementId, FiniteSemiring, MAX_ORDER};

/// A subset of a carrier of fixed width, stored as a bit mask.
///
/// Iteration is always in ascending element order. Ordering of subsets is by
/// bit pattern, which is the order ideal enumeration produces.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElementSubset {
    width: u8,
    bits: u64,
}

impl ElementSubset {
    pub fn empty(width: usize) -> Self {
        assert!(width <= MAX_ORDER);
        ElementSubset {
            width: width as u8,
            bits: 0,
        }
    }

    pub fn full(width: usize) -> Self {
        assert!(width <= MAX_ORDER);
        let bits = if width == 64 { u64::MAX } else { (1u64 << width) - 1 };
        ElementSubset {
            width: width as u8,
            bits,
        }
    }

    pub fn from_bits(width: usize, bits: u64) -> Self {
        let full = Self::full(width);
        assert_eq!(bits & !full.bits, 0, "bits outside width {width}");
        ElementSubset {
            width: width as u8,
            bits,
        }
    }

    pub fn singleton(width: usize, e: ElementId) -> Self {
        let mut s = Self::empty(width);
        s.insert(e.0);
        s
    }

    pub fn from_indices(width: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::empty(width);
        for i in indices {
            s.insert(i);
        }
        s
    }

    /// Looks up each name in `sr`; `None` if any name is unknown.
    pub fn from_names<S: AsRef<str>>(sr: &FiniteSemiring, names: &[S]) -> Option<Self> {
        let mut s = Self::empty(sr.order());
        for n in names {
            s.insert(sr.element_by_name(n.as_ref())?.0);
        }
        Some(s)
    }

    #[inline]
    pub fn width(&self) -> usize {
        self.width as usize
    }

    #[inline]
    pub fn bits(&self) -> u64 {
        self.bits
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        i < self.width() && self.bits >> i & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        assert!(i < self.width(), "element {i} outside width {}", self.width);
        self.bits |= 1 << i;
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn is_full(&self) -> bool {
        *self == Self::full(self.width())
    }

    pub fn is_subset_of(&self, other: &ElementSubset) -> bool {
        self.bits & !other.bits == 0
    }

    pub fn union(&self, other: &ElementSubset) -> ElementSubset {
        ElementSubset {
            width: self.width,
            bits: self.bits | other.bits,
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        let bits = self.bits;
        (0..self.width()).filter(move |&i| bits >> i & 1 == 1)
    }

    pub fn first(&self) -> Option<usize> {
        (self.bits != 0).then(|| self.bits.trailing_zeros() as usize)
    }

    pub fn names<'a>(&self, sr: &'a FiniteSemiring) -> Vec<&'a str> {
        self.iter().map(|i| sr.elements()[i].as_str()).collect()
    }

    /// `{0,a}` style rendering with the semiring's element names.
    pub fn display(&self, sr: &FiniteSemiring) -> String {
        format!("{{{}}}", self.names(sr).join(","))
    }
}

impl fmt::Debug for ElementSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn basics() {
        let s = ElementSubset::from_indices(5, [0, 3]);
        assert!(s.contains(0) && s.contains(3) && !s.contains(1));
        assert!(!s.contains(7));
        assert_eq!(s.len(), 2);
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![0, 3]);
        assert!(ElementSubset::full(5).is_full());
        assert_eq!(ElementSubset::full(64).len(), 64);
        assert_eq!(s.first(), Some(0));
        assert_eq!(ElementSubset::empty(3).first(), None);
    }

    proptest! {
        #[test]
        fn iter_roundtrips_indices(bits in 0u64..(1 << 12)) {
            let s = ElementSubset::from_bits(12, bits);
            let back = ElementSubset::from_indices(12, s.iter());
            prop_assert_eq!(s, back);
            prop_assert_eq!(s.len(), s.iter().count());
        }
    }
}
