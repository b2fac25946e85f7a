use std::fmt;

use crate::kernel::{FiniteSemiring, MAX_ORDER};
use crate::subset::ElementSubset;

/// An equivalence relation on `0..k` in restricted-growth form: class
/// indices first appear in element order, so `class_of[0] == 0` and each
/// entry is at most one more than the maximum before it.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    class_of: Vec<u8>,
}

impl Partition {
    /// Canonicalises arbitrary class labels.
    pub fn from_labels<T: PartialEq>(labels: &[T]) -> Self {
        assert!(labels.len() <= MAX_ORDER);
        let mut seen: Vec<&T> = Vec::new();
        let class_of = labels
            .iter()
            .map(|l| match seen.iter().position(|s| *s == l) {
                Some(i) => i as u8,
                None => {
                    seen.push(l);
                    (seen.len() - 1) as u8
                }
            })
            .collect();
        Partition { class_of }
    }

    /// From a list of disjoint blocks covering `0..width`.
    pub fn from_blocks(width: usize, blocks: &[ElementSubset]) -> Option<Self> {
        let mut labels = vec![usize::MAX; width];
        for (b, block) in blocks.iter().enumerate() {
            for x in block.iter() {
                if labels[x] != usize::MAX {
                    return None;
                }
                labels[x] = b;
            }
        }
        if labels.contains(&usize::MAX) {
            return None;
        }
        Some(Partition::from_labels(&labels))
    }

    pub fn identity(width: usize) -> Self {
        Partition {
            class_of: (0..width as u8).collect(),
        }
    }

    pub fn universal(width: usize) -> Self {
        Partition {
            class_of: vec![0; width],
        }
    }

    /// All partitions of `0..width` in lexicographic restricted-growth order.
    pub fn all(width: usize) -> PartitionIter {
        PartitionIter {
            current: (width > 0).then(|| vec![0; width]),
        }
    }

    pub fn width(&self) -> usize {
        self.class_of.len()
    }

    #[inline]
    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x] as usize
    }

    #[inline]
    pub fn related(&self, x: usize, y: usize) -> bool {
        self.class_of[x] == self.class_of[y]
    }

    pub fn num_classes(&self) -> usize {
        self.class_of.iter().max().map_or(0, |&m| m as usize + 1)
    }

    pub fn labels(&self) -> &[u8] {
        &self.class_of
    }

    pub fn class(&self, c: usize) -> ElementSubset {
        ElementSubset::from_indices(self.width(), (0..self.width()).filter(|&x| self.class_of(x) == c))
    }

    pub fn classes(&self) -> Vec<ElementSubset> {
        (0..self.num_classes()).map(|c| self.class(c)).collect()
    }

    /// Inclusion as relations: every pair related here is related in `other`.
    pub fn is_finer_than(&self, other: &Partition) -> bool {
        let k = self.width();
        (0..k).all(|x| (0..x).all(|y| !self.related(x, y) || other.related(x, y)))
    }

    pub fn is_identity(&self) -> bool {
        self.num_classes() == self.width()
    }

    pub fn is_universal(&self) -> bool {
        self.num_classes() <= 1
    }

    /// `{0,a} {1,b,c,d}` style rendering.
    pub fn display(&self, sr: &FiniteSemiring) -> String {
        self.classes()
            .iter()
            .map(|c| c.display(sr))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.classes()).finish()
    }
}

/// Restricted-growth string enumerator.
pub struct PartitionIter {
    current: Option<Vec<u8>>,
}

impl Iterator for PartitionIter {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        let cur = self.current.take()?;
        let out = Partition {
            class_of: cur.clone(),
        };
        let mut next = cur;
        let n = next.len();
        // Increment the rightmost position that can grow, reset the tail.
        let mut i = n;
        while i > 1 {
            i -= 1;
            let max_before = *next[..i].iter().max().unwrap();
            if next[i] <= max_before {
                next[i] += 1;
                for v in &mut next[i + 1..] {
                    *v = 0;
                }
                self.current = Some(next);
                return Some(out);
            }
        }
        Some(out)
    }
}
