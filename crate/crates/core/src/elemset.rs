//! Packed membership sets over element indices.

use std::cmp::Ordering;
use std::fmt;

use fixedbitset::FixedBitSet;

/// A set of element indices of one ring, stored as a bit vector of length `order`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ElemSet {
    bits: FixedBitSet,
}

impl ElemSet {
    pub fn empty(order: usize) -> Self {
        ElemSet {
            bits: FixedBitSet::with_capacity(order),
        }
    }

    pub fn full(order: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(order);
        bits.insert_range(..);
        ElemSet { bits }
    }

    pub fn from_indices(order: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::empty(order);
        for i in indices {
            s.insert(i);
        }
        s
    }

    /// Capacity of the universe, i.e. the order of the ambient ring.
    pub fn universe(&self) -> usize {
        self.bits.len()
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        self.bits.contains(i)
    }

    /// Returns true if `i` was not already present.
    #[inline]
    pub fn insert(&mut self, i: usize) -> bool {
        !self.bits.put(i)
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn is_full(&self) -> bool {
        self.len() == self.universe()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.ones()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn is_subset(&self, other: &ElemSet) -> bool {
        self.bits.is_subset(&other.bits)
    }

    pub fn union_with(&mut self, other: &ElemSet) {
        self.bits.union_with(&other.bits);
    }

    pub fn intersection(&self, other: &ElemSet) -> ElemSet {
        let mut bits = self.bits.clone();
        bits.intersect_with(&other.bits);
        ElemSet { bits }
    }

    /// Orders sets by size first, then by their sorted member lists.
    pub fn canonical_cmp(&self, other: &ElemSet) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.iter().cmp(other.iter()))
    }
}

impl fmt::Debug for ElemSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_membership() {
        let mut s = ElemSet::empty(10);
        assert!(s.insert(3));
        assert!(!s.insert(3));
        s.insert(7);
        assert_eq!(s.to_vec(), vec![3, 7]);
        assert_eq!(s.len(), 2);
        assert!(s.is_subset(&ElemSet::full(10)));
        assert!(ElemSet::full(10).is_full());
    }

    #[test]
    fn canonical_order_is_size_then_lex() {
        let a = ElemSet::from_indices(12, [0, 6]);
        let b = ElemSet::from_indices(12, [0, 4, 8]);
        let c = ElemSet::from_indices(12, [0, 3, 6, 9]);
        let d = ElemSet::from_indices(12, [0, 1, 2]);
        assert_eq!(a.canonical_cmp(&b), Ordering::Less);
        assert_eq!(b.canonical_cmp(&c), Ordering::Less);
        assert_eq!(d.canonical_cmp(&b), Ordering::Less);
    }
}
