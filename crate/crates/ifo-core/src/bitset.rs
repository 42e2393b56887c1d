//! Fixed-width bit sets over state ids.
//!
//! `StateSet` is the workhorse of the whole crate: transition successor
//! sets, observer macrostates, and binary-matrix rows are all bit sets.
//! Two sets compare equal iff they have the same width and the same
//! members, so they can be used directly as hash-map keys.

type Block = u64;
const BITS: usize = Block::BITS as usize;

/// A set of state ids drawn from a fixed universe `0..width`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct StateSet {
    width: usize,
    blocks: Vec<Block>,
}

#[inline]
fn div_rem(i: usize) -> (usize, usize) {
    (i / BITS, i % BITS)
}

/// Number of blocks needed for `width` bits.
#[inline]
pub(crate) fn blocks_for(width: usize) -> usize {
    width.div_ceil(BITS)
}

impl StateSet {
    /// The empty set over `0..width`.
    pub fn new(width: usize) -> Self {
        StateSet {
            width,
            blocks: vec![0; blocks_for(width)],
        }
    }

    pub fn from_iter<I: IntoIterator<Item = usize>>(width: usize, iter: I) -> Self {
        let mut s = StateSet::new(width);
        for i in iter {
            s.insert(i);
        }
        s
    }

    pub fn width(&self) -> usize {
        self.width
    }

    /// Panics if `i >= width`.
    #[inline]
    pub fn insert(&mut self, i: usize) {
        assert!(i < self.width, "state {i} out of range 0..{}", self.width);
        let (b, r) = div_rem(i);
        self.blocks[b] |= 1 << r;
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        if i >= self.width {
            return false;
        }
        let (b, r) = div_rem(i);
        self.blocks[b] & (1 << r) != 0
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.blocks.iter().all(|&b| b == 0)
    }

    pub fn len(&self) -> usize {
        self.blocks.iter().map(|b| b.count_ones() as usize).sum()
    }

    /// `self |= other`. Both sets must have the same width.
    #[inline]
    pub fn union_with(&mut self, other: &StateSet) {
        debug_assert_eq!(self.width, other.width);
        for (a, b) in self.blocks.iter_mut().zip(&other.blocks) {
            *a |= b;
        }
    }

    /// Union with a raw block slice of the same width (used for matrix rows).
    #[inline]
    pub(crate) fn union_with_blocks(&mut self, other: &[Block]) {
        debug_assert_eq!(self.blocks.len(), other.len());
        for (a, b) in self.blocks.iter_mut().zip(other) {
            *a |= b;
        }
    }

    /// True iff the sets share at least one member.
    #[inline]
    pub fn intersects(&self, other: &StateSet) -> bool {
        debug_assert_eq!(self.width, other.width);
        self.blocks.iter().zip(&other.blocks).any(|(a, b)| a & b != 0)
    }

    /// True iff `self ⊆ other`.
    #[inline]
    pub fn is_subset(&self, other: &StateSet) -> bool {
        debug_assert_eq!(self.width, other.width);
        self.blocks.iter().zip(&other.blocks).all(|(a, b)| a & !b == 0)
    }

    /// Iterate members in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.blocks.iter().enumerate().flat_map(|(bi, &block)| {
            let mut rest = block;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let r = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(bi * BITS + r)
            })
        })
    }

    pub(crate) fn blocks(&self) -> &[Block] {
        &self.blocks
    }
}

impl std::fmt::Debug for StateSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<usize> for StateSet {
    /// Collects into a set whose width is one past the largest member.
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let items: Vec<usize> = iter.into_iter().collect();
        let width = items.iter().max().map_or(0, |&m| m + 1);
        StateSet::from_iter(width, items)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn insert_contains_iter() {
        let mut s = StateSet::new(130);
        s.insert(0);
        s.insert(64);
        s.insert(129);
        assert!(s.contains(0) && s.contains(64) && s.contains(129));
        assert!(!s.contains(1) && !s.contains(128));
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![0, 64, 129]);
        assert_eq!(s.len(), 3);
    }

    #[test]
    fn subset_and_intersects() {
        let a = StateSet::from_iter(10, [1, 3]);
        let b = StateSet::from_iter(10, [1, 3, 7]);
        assert!(a.is_subset(&b));
        assert!(!b.is_subset(&a));
        assert!(a.intersects(&b));
        let c = StateSet::from_iter(10, [2]);
        assert!(!a.intersects(&c));
        assert!(StateSet::new(10).is_subset(&a));
    }

    #[test]
    fn equal_sets_hash_equal() {
        use std::collections::HashSet;
        let mut seen = HashSet::new();
        seen.insert(StateSet::from_iter(70, [5, 69]));
        assert!(seen.contains(&StateSet::from_iter(70, [69, 5])));
        // Same members, different universe: distinct values.
        assert!(!seen.contains(&StateSet::from_iter(71, [5, 69])));
    }
}
