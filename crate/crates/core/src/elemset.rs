use std::fmt;

/// Largest number of elements an [`ElemSet`] can hold.
pub const MAX_ELEMS: usize = 256;

const WORDS: usize = MAX_ELEMS / 64;

/// Fixed-capacity bit set over element indices `0..MAX_ELEMS`.
///
/// Used for subsets of group elements, ring elements and ideal levels.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct ElemSet([u64; WORDS]);

impl ElemSet {
    pub const fn new() -> Self {
        ElemSet([0; WORDS])
    }

    pub fn singleton(x: usize) -> Self {
        let mut s = Self::new();
        s.insert(x);
        s
    }

    /// The set `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_ELEMS);
        let mut s = Self::new();
        for (w, word) in s.0.iter_mut().enumerate() {
            let lo = w * 64;
            if n >= lo + 64 {
                *word = u64::MAX;
            } else if n > lo {
                *word = (1u64 << (n - lo)) - 1;
            }
        }
        s
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        x < MAX_ELEMS && self.0[x / 64] >> (x % 64) & 1 == 1
    }

    /// Inserts `x`, returning whether it was absent.
    #[inline]
    pub fn insert(&mut self, x: usize) -> bool {
        assert!(x < MAX_ELEMS, "element index {x} out of range");
        let bit = 1u64 << (x % 64);
        let fresh = self.0[x / 64] & bit == 0;
        self.0[x / 64] |= bit;
        fresh
    }

    pub fn remove(&mut self, x: usize) -> bool {
        if x >= MAX_ELEMS {
            return false;
        }
        let bit = 1u64 << (x % 64);
        let had = self.0[x / 64] & bit != 0;
        self.0[x / 64] &= !bit;
        had
    }

    pub fn len(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    pub fn union(&self, other: &Self) -> Self {
        let mut out = *self;
        for (a, b) in out.0.iter_mut().zip(other.0) {
            *a |= b;
        }
        out
    }

    pub fn intersection(&self, other: &Self) -> Self {
        let mut out = *self;
        for (a, b) in out.0.iter_mut().zip(other.0) {
            *a &= b;
        }
        out
    }

    pub fn difference(&self, other: &Self) -> Self {
        let mut out = *self;
        for (a, b) in out.0.iter_mut().zip(other.0) {
            *a &= !b;
        }
        out
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.0.iter().zip(other.0).all(|(a, b)| a & !b == 0)
    }

    pub fn min(&self) -> Option<usize> {
        self.iter().next()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(w, &word)| {
            let mut rest = word;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let bit = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(w * 64 + bit)
            })
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl FromIterator<usize> for ElemSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = ElemSet::new();
        for x in iter {
            s.insert(x);
        }
        s
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
    use proptest::prelude::*;

    #[test]
    fn full_boundaries() {
        assert_eq!(ElemSet::full(0).len(), 0);
        assert_eq!(ElemSet::full(64).len(), 64);
        assert_eq!(ElemSet::full(65).len(), 65);
        assert_eq!(ElemSet::full(256).len(), 256);
        assert!(ElemSet::full(65).contains(64));
        assert!(!ElemSet::full(65).contains(65));
    }

    proptest! {
        #[test]
        fn set_ops_match_btreeset(a in proptest::collection::btree_set(0usize..256, 0..40),
                                  b in proptest::collection::btree_set(0usize..256, 0..40)) {
            let sa: ElemSet = a.iter().copied().collect();
            let sb: ElemSet = b.iter().copied().collect();
            prop_assert_eq!(sa.to_vec(), a.iter().copied().collect::<Vec<_>>());
            prop_assert_eq!(sa.union(&sb).to_vec(), a.union(&b).copied().collect::<Vec<_>>());
            prop_assert_eq!(sa.intersection(&sb).to_vec(), a.intersection(&b).copied().collect::<Vec<_>>());
            prop_assert_eq!(sa.difference(&sb).to_vec(), a.difference(&b).copied().collect::<Vec<_>>());
            prop_assert_eq!(sa.is_subset(&sb), a.is_subset(&b));
            prop_assert_eq!(sa.len(), a.len());
        }
    }
}
