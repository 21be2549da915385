use std::cmp::Ordering;
use std::fmt;

use fixedbitset::FixedBitSet;

use crate::rig::Elem;

/// A subset of a finite carrier, stored as a bitset over element indices.
///
/// Sets order first by cardinality and then lexicographically by their
/// sorted elements, which is the canonical order used for every list of
/// ideals, points and filters in this crate.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ElemSet {
    bits: FixedBitSet,
}

impl ElemSet {
    pub fn empty(size: usize) -> Self {
        Self {
            bits: FixedBitSet::with_capacity(size),
        }
    }

    pub fn full(size: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(size);
        bits.insert_range(..);
        Self { bits }
    }

    pub fn from_elems<I: IntoIterator<Item = Elem>>(size: usize, elems: I) -> Self {
        let mut set = Self::empty(size);
        for e in elems {
            set.insert(e);
        }
        set
    }

    /// Size of the ambient carrier, not the number of members.
    pub fn universe(&self) -> usize {
        self.bits.len()
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

    pub fn contains(&self, e: Elem) -> bool {
        self.bits.contains(e)
    }

    /// Inserts `e`, returning whether it was newly added.
    pub fn insert(&mut self, e: Elem) -> bool {
        !self.bits.put(e)
    }

    pub fn remove(&mut self, e: Elem) {
        self.bits.set(e, false);
    }

    pub fn iter(&self) -> impl Iterator<Item = Elem> + '_ {
        self.bits.ones()
    }

    pub fn to_vec(&self) -> Vec<Elem> {
        self.iter().collect()
    }

    pub fn is_subset(&self, other: &ElemSet) -> bool {
        self.bits.is_subset(&other.bits)
    }

    pub fn is_disjoint(&self, other: &ElemSet) -> bool {
        self.bits.is_disjoint(&other.bits)
    }

    pub fn union(&self, other: &ElemSet) -> ElemSet {
        let mut bits = self.bits.clone();
        bits.union_with(&other.bits);
        ElemSet { bits }
    }

    pub fn intersection(&self, other: &ElemSet) -> ElemSet {
        let mut bits = self.bits.clone();
        bits.intersect_with(&other.bits);
        ElemSet { bits }
    }

    pub fn union_with(&mut self, other: &ElemSet) {
        self.bits.union_with(&other.bits);
    }

    pub fn complement(&self) -> ElemSet {
        let mut bits = self.bits.clone();
        bits.toggle_range(..);
        ElemSet { bits }
    }
}

impl Ord for ElemSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.iter().cmp(other.iter()))
    }
}

impl PartialOrd for ElemSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
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
    fn canonical_order_is_by_size_then_elements() {
        let mut sets = [
            ElemSet::from_elems(4, [0, 1, 2, 3]),
            ElemSet::from_elems(4, [0, 2]),
            ElemSet::from_elems(4, [0, 1]),
            ElemSet::from_elems(4, [0]),
        ];
        sets.sort();
        let listed: Vec<_> = sets.iter().map(ElemSet::to_vec).collect();
        assert_eq!(listed, vec![vec![0], vec![0, 1], vec![0, 2], vec![0, 1, 2, 3]]);
    }

    #[test]
    fn insert_reports_novelty() {
        let mut s = ElemSet::empty(3);
        assert!(s.insert(2));
        assert!(!s.insert(2));
        assert_eq!(s.complement().to_vec(), vec![0, 1]);
    }
}
