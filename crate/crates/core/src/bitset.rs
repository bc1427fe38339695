//! Fixed 256-bit sets for group element indices.

use core::fmt;

const WORDS: usize = 4;

/// A set of element indices in `0..256`, stored as four machine words.
///
/// `Ord` compares by the first differing index (the set containing it is
/// smaller), so sorting by `(len, set)` orders equal-size sets exactly like
/// their sorted member lists; that pair is the canonical subgroup order.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct ElemSet {
    words: [u64; WORDS],
}

impl ElemSet {
    /// The empty set.
    pub const fn empty() -> Self {
        ElemSet { words: [0; WORDS] }
    }

    /// The set `{0, 1, ..., n-1}`.
    pub fn full(n: usize) -> Self {
        assert!(n <= 256);
        let mut s = Self::empty();
        for i in 0..n {
            s.insert(i);
        }
        s
    }

    /// Singleton set.
    pub fn singleton(i: usize) -> Self {
        let mut s = Self::empty();
        s.insert(i);
        s
    }

    /// Inserts an index.
    pub fn insert(&mut self, i: usize) {
        debug_assert!(i < 256);
        self.words[i / 64] |= 1u64 << (i % 64);
    }

    /// Membership test.
    pub fn contains(&self, i: usize) -> bool {
        debug_assert!(i < 256);
        self.words[i / 64] & (1u64 << (i % 64)) != 0
    }

    /// Number of members.
    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// True when no member is present.
    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Subset test.
    pub fn is_subset(&self, other: &ElemSet) -> bool {
        self.words
            .iter()
            .zip(other.words.iter())
            .all(|(a, b)| a & !b == 0)
    }

    /// Set intersection.
    pub fn intersect(&self, other: &ElemSet) -> ElemSet {
        let mut w = [0u64; WORDS];
        for k in 0..WORDS {
            w[k] = self.words[k] & other.words[k];
        }
        ElemSet { words: w }
    }

    /// Set union.
    pub fn union(&self, other: &ElemSet) -> ElemSet {
        let mut w = [0u64; WORDS];
        for k in 0..WORDS {
            w[k] = self.words[k] | other.words[k];
        }
        ElemSet { words: w }
    }

    /// Iterates members in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..WORDS).flat_map(move |k| {
            let mut w = self.words[k];
            core::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(64 * k + b)
                }
            })
        })
    }

    /// Smallest member, if any. Named to avoid shadowing `Ord::min`.
    pub fn first(&self) -> Option<usize> {
        self.iter().next()
    }
}

impl Ord for ElemSet {
    fn cmp(&self, other: &Self) -> core::cmp::Ordering {
        // The first differing index decides, and the set containing it
        // comes first. Among sets of equal size this agrees with comparing
        // sorted member lists, which is how subgroups are ordered after
        // the primary sort on cardinality.
        for k in 0..WORDS {
            let d = self.words[k] ^ other.words[k];
            if d != 0 {
                let bit = 1u64 << d.trailing_zeros();
                return if self.words[k] & bit != 0 {
                    core::cmp::Ordering::Less
                } else {
                    core::cmp::Ordering::Greater
                };
            }
        }
        core::cmp::Ordering::Equal
    }
}

impl PartialOrd for ElemSet {
    fn partial_cmp(&self, other: &Self) -> Option<core::cmp::Ordering> {
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
    use alloc::vec::Vec;

    #[test]
    fn insert_iter_roundtrip() {
        let mut s = ElemSet::empty();
        for i in [0usize, 3, 63, 64, 200, 255] {
            s.insert(i);
        }
        let got: Vec<usize> = s.iter().collect();
        assert_eq!(got, [0, 3, 63, 64, 200, 255]);
        assert_eq!(s.len(), 6);
        assert_eq!(s.first(), Some(0));
    }

    #[test]
    fn subset_and_ops() {
        let a = ElemSet::full(10);
        let mut b = ElemSet::empty();
        b.insert(2);
        b.insert(9);
        assert!(b.is_subset(&a));
        assert!(!a.is_subset(&b));
        assert_eq!(a.intersect(&b), b);
        assert_eq!(a.union(&b), a);
    }

    #[test]
    fn order_is_by_first_differing_index() {
        // {0,5} < {1} because index 0 belongs only to the first set.
        let mut x = ElemSet::empty();
        x.insert(0);
        x.insert(5);
        let mut y = ElemSet::empty();
        y.insert(1);
        assert!(x < y);
        // Equal-size sets compare like their sorted member lists.
        let mut a = ElemSet::empty();
        a.insert(1);
        a.insert(3);
        let mut b = ElemSet::empty();
        b.insert(2);
        b.insert(3);
        let mut c = ElemSet::empty();
        c.insert(1);
        c.insert(4);
        assert!(a < b);
        assert!(a < c);
    }
}
