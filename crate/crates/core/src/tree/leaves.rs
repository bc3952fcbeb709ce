use std::fmt;

/// Largest number of distinct leaf ids a tree may use. Leaf sets are `u64` bitsets.
pub const MAX_LEAVES: usize = 64;

/// Dense integer id of a leaf. Ids below [`MAX_LEAVES`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LeafLabel(pub u32);

impl LeafLabel {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for LeafLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<u32> for LeafLabel {
    fn from(v: u32) -> Self {
        LeafLabel(v)
    }
}

/// A set of leaf ids stored as a 64-bit mask.
///
/// The derived `Ord` compares masks numerically; cluster lists are sorted
/// with it so that a topology has exactly one stored form.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct LeafSet(u64);

impl LeafSet {
    pub const EMPTY: LeafSet = LeafSet(0);

    pub fn from_bits(bits: u64) -> Self {
        LeafSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn singleton(leaf: LeafLabel) -> Self {
        debug_assert!(leaf.index() < MAX_LEAVES);
        LeafSet(1u64 << leaf.0)
    }

    /// `{lo, lo+1, ..., hi}`.
    pub fn range(lo: u32, hi: u32) -> Self {
        (lo..=hi).map(LeafLabel).collect()
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, leaf: LeafLabel) -> bool {
        leaf.index() < MAX_LEAVES && self.0 & (1u64 << leaf.0) != 0
    }

    pub fn insert(&mut self, leaf: LeafLabel) {
        self.0 |= 1u64 << leaf.0;
    }

    pub fn remove(&mut self, leaf: LeafLabel) {
        self.0 &= !(1u64 << leaf.0);
    }

    pub fn with(self, leaf: LeafLabel) -> Self {
        LeafSet(self.0 | (1u64 << leaf.0))
    }

    pub fn without(self, leaf: LeafLabel) -> Self {
        LeafSet(self.0 & !(1u64 << leaf.0))
    }

    pub fn union(self, other: LeafSet) -> Self {
        LeafSet(self.0 | other.0)
    }

    pub fn intersection(self, other: LeafSet) -> Self {
        LeafSet(self.0 & other.0)
    }

    pub fn difference(self, other: LeafSet) -> Self {
        LeafSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: LeafSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: LeafSet) -> bool {
        self.0 & other.0 == 0
    }

    pub fn min(self) -> Option<LeafLabel> {
        (self.0 != 0).then(|| LeafLabel(self.0.trailing_zeros()))
    }

    pub fn max(self) -> Option<LeafLabel> {
        (self.0 != 0).then(|| LeafLabel(63 - self.0.leading_zeros()))
    }

    /// Leaves in increasing id order.
    pub fn iter(self) -> LeafIter {
        LeafIter(self.0)
    }

    pub fn to_vec(self) -> Vec<LeafLabel> {
        self.iter().collect()
    }

    /// All subsets of cardinality `size`, in lexicographic order of their
    /// sorted element sequences.
    pub fn subsets_of_size(self, size: usize) -> Combinations {
        Combinations::new(self.to_vec(), size)
    }
}

impl fmt::Debug for LeafSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter().map(|l| l.0)).finish()
    }
}

impl fmt::Display for LeafSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, l) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, "}}")
    }
}

impl FromIterator<LeafLabel> for LeafSet {
    fn from_iter<I: IntoIterator<Item = LeafLabel>>(iter: I) -> Self {
        let mut s = LeafSet::EMPTY;
        for l in iter {
            s.insert(l);
        }
        s
    }
}

impl IntoIterator for LeafSet {
    type Item = LeafLabel;
    type IntoIter = LeafIter;

    fn into_iter(self) -> LeafIter {
        self.iter()
    }
}

pub struct LeafIter(u64);

impl Iterator for LeafIter {
    type Item = LeafLabel;

    fn next(&mut self) -> Option<LeafLabel> {
        if self.0 == 0 {
            return None;
        }
        let tz = self.0.trailing_zeros();
        self.0 &= self.0 - 1;
        Some(LeafLabel(tz))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for LeafIter {}

/// Fixed-size subsets of a leaf list, yielded as masks in lexicographic order
/// of index sequences (`{1,2,3} < {1,2,4} < ... < {2,3,4}`).
pub struct Combinations {
    items: Vec<LeafLabel>,
    idx: Vec<usize>,
    done: bool,
}

impl Combinations {
    fn new(items: Vec<LeafLabel>, size: usize) -> Self {
        let done = size > items.len();
        Combinations {
            idx: (0..size).collect(),
            items,
            done,
        }
    }
}

impl Iterator for Combinations {
    type Item = LeafSet;

    fn next(&mut self) -> Option<LeafSet> {
        if self.done {
            return None;
        }
        let current: LeafSet = self.idx.iter().map(|&i| self.items[i]).collect();
        let n = self.items.len();
        let k = self.idx.len();
        // advance to the next index sequence
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.idx[i] < n - k + i {
                self.idx[i] += 1;
                for j in i + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(current)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[u32]) -> LeafSet {
        v.iter().map(|&x| LeafLabel(x)).collect()
    }

    #[test]
    fn basic_set_ops() {
        let a = set(&[1, 3, 5]);
        let b = set(&[3, 4]);
        assert_eq!(a.union(b), set(&[1, 3, 4, 5]));
        assert_eq!(a.intersection(b), set(&[3]));
        assert_eq!(a.difference(b), set(&[1, 5]));
        assert_eq!(a.min(), Some(LeafLabel(1)));
        assert_eq!(a.max(), Some(LeafLabel(5)));
        assert_eq!(LeafSet::EMPTY.min(), None);
        assert!(set(&[1, 5]).is_subset(a));
        assert_eq!(a.to_vec(), vec![LeafLabel(1), LeafLabel(3), LeafLabel(5)]);
        assert_eq!(format!("{a}"), "{1,3,5}");
    }

    #[test]
    fn combinations_are_lexicographic() {
        let got: Vec<Vec<u32>> = set(&[1, 2, 3, 4])
            .subsets_of_size(2)
            .map(|s| s.iter().map(|l| l.0).collect())
            .collect();
        assert_eq!(
            got,
            vec![
                vec![1, 2],
                vec![1, 3],
                vec![1, 4],
                vec![2, 3],
                vec![2, 4],
                vec![3, 4]
            ]
        );
    }

    #[test]
    fn combination_edge_sizes() {
        let s = set(&[0, 7, 9]);
        assert_eq!(
            s.subsets_of_size(0).collect::<Vec<_>>(),
            vec![LeafSet::EMPTY]
        );
        assert_eq!(s.subsets_of_size(3).collect::<Vec<_>>(), vec![s]);
        assert_eq!(s.subsets_of_size(4).count(), 0);
        assert_eq!(LeafSet::range(0, 9).subsets_of_size(4).count(), 210);
    }
}
