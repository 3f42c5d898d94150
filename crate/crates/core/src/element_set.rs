use std::cmp::Ordering;
use std::fmt;

use fixedbitset::FixedBitSet;

use crate::frame::ElementId;

/// A set of elements of one frame, stored as a bitset over element indices.
///
/// Sets are ordered as binary numbers (element `i` is bit `i`), which is the
/// order enumeration results are reported in.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ElementSet {
    bits: FixedBitSet,
}

impl ElementSet {
    pub fn empty(universe: usize) -> Self {
        ElementSet {
            bits: FixedBitSet::with_capacity(universe),
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(universe);
        bits.insert_range(..);
        ElementSet { bits }
    }

    pub fn from_ids(universe: usize, ids: impl IntoIterator<Item = ElementId>) -> Self {
        let mut set = ElementSet::empty(universe);
        for id in ids {
            set.insert(id);
        }
        set
    }

    /// Low `universe` bits of `mask`. Requires `universe <= 64`.
    pub fn from_mask(universe: usize, mask: u64) -> Self {
        assert!(universe <= 64, "mask form only covers 64 elements");
        ElementSet::from_ids(
            universe,
            (0..universe)
                .filter(|i| mask >> i & 1 == 1)
                .map(ElementId::new),
        )
    }

    /// Inverse of [`ElementSet::from_mask`]; `None` past 64 elements.
    pub fn to_mask(&self) -> Option<u64> {
        if self.universe() > 64 {
            return None;
        }
        Some(self.iter().fold(0u64, |m, id| m | 1 << id.index()))
    }

    pub fn universe(&self) -> usize {
        self.bits.len()
    }

    pub fn insert(&mut self, id: ElementId) {
        assert!(
            id.index() < self.universe(),
            "element {id} outside a universe of {}",
            self.universe()
        );
        self.bits.insert(id.index());
    }

    pub fn contains(&self, id: ElementId) -> bool {
        self.bits.contains(id.index())
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn iter(&self) -> impl Iterator<Item = ElementId> + '_ {
        self.bits.ones().map(ElementId::new)
    }

    pub fn is_subset(&self, other: &ElementSet) -> bool {
        self.bits.is_subset(&other.bits)
    }

    pub fn union(&self, other: &ElementSet) -> ElementSet {
        let mut bits = self.bits.clone();
        bits.union_with(&other.bits);
        ElementSet { bits }
    }

    pub fn intersection(&self, other: &ElementSet) -> ElementSet {
        let mut bits = self.bits.clone();
        bits.intersect_with(&other.bits);
        ElementSet { bits }
    }

    pub fn union_with(&mut self, other: &ElementSet) {
        self.bits.union_with(&other.bits);
    }

    pub fn intersect_with(&mut self, other: &ElementSet) {
        self.bits.intersect_with(&other.bits);
    }
}

impl Ord for ElementSet {
    fn cmp(&self, other: &Self) -> Ordering {
        // Compare as binary numbers: the highest differing bit decides.
        let n = self.universe().max(other.universe());
        for i in (0..n).rev() {
            match (self.bits.contains(i), other.bits.contains(i)) {
                (true, false) => return Ordering::Greater,
                (false, true) => return Ordering::Less,
                _ => {}
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for ElementSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.bits.ones()).finish()
    }
}
