use std::fmt;

use super::{LeafLabel, LeafSet};

/// A 3-subset of leaves, stored sorted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LeafTriple([LeafLabel; 3]);

impl LeafTriple {
    pub fn new(a: LeafLabel, b: LeafLabel, c: LeafLabel) -> Option<Self> {
        let mut v = [a, b, c];
        v.sort();
        (v[0] != v[1] && v[1] != v[2]).then_some(LeafTriple(v))
    }

    pub fn from_set(s: LeafSet) -> Option<Self> {
        if s.len() != 3 {
            return None;
        }
        let mut it = s.iter();
        Some(LeafTriple([it.next()?, it.next()?, it.next()?]))
    }

    pub fn leaves(self) -> [LeafLabel; 3] {
        self.0
    }

    pub fn as_set(self) -> LeafSet {
        self.0.into_iter().collect()
    }

    /// All 3-subsets of `leaves` in lexicographic order.
    pub fn all_in(leaves: LeafSet) -> Vec<LeafTriple> {
        leaves
            .subsets_of_size(3)
            .map(|s| LeafTriple::from_set(s).expect("3-subset"))
            .collect()
    }
}

impl fmt::Display for LeafTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{},{}}}", self.0[0], self.0[1], self.0[2])
    }
}

/// One of the three rooted topologies on a 3-set: `apex|cherry`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TripletChoice {
    apex: LeafLabel,
    cherry: (LeafLabel, LeafLabel),
}

impl TripletChoice {
    /// `apex | a b`. Returns `None` unless the three leaves are distinct.
    pub fn new(apex: LeafLabel, a: LeafLabel, b: LeafLabel) -> Option<Self> {
        LeafTriple::new(apex, a, b)?;
        Some(TripletChoice {
            apex,
            cherry: (a.min(b), a.max(b)),
        })
    }

    pub fn apex(self) -> LeafLabel {
        self.apex
    }

    pub fn cherry(self) -> (LeafLabel, LeafLabel) {
        self.cherry
    }

    pub fn triple(self) -> LeafTriple {
        LeafTriple::new(self.apex, self.cherry.0, self.cherry.1).expect("distinct")
    }

    /// Position of the apex within the sorted triple: 0, 1 or 2.
    pub fn index(self) -> u8 {
        self.triple()
            .leaves()
            .iter()
            .position(|&l| l == self.apex)
            .expect("apex in triple") as u8
    }

    pub fn from_index(triple: LeafTriple, index: u8) -> Self {
        let [a, b, c] = triple.leaves();
        match index {
            0 => TripletChoice {
                apex: a,
                cherry: (b, c),
            },
            1 => TripletChoice {
                apex: b,
                cherry: (a, c),
            },
            2 => TripletChoice {
                apex: c,
                cherry: (a, b),
            },
            _ => panic!("triplet index out of range: {index}"),
        }
    }
}

impl fmt::Display for TripletChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}|{},{}", self.apex, self.cherry.0, self.cherry.1)
    }
}

/// One of the three resolved unrooted topologies on a 4-set: `ab|cd`.
///
/// Stored with each pair sorted and the pair holding the smallest leaf first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QuartetChoice {
    split: ((LeafLabel, LeafLabel), (LeafLabel, LeafLabel)),
}

impl QuartetChoice {
    pub fn new(a: LeafLabel, b: LeafLabel, c: LeafLabel, d: LeafLabel) -> Option<Self> {
        let s: LeafSet = [a, b, c, d].into_iter().collect();
        if s.len() != 4 {
            return None;
        }
        let p = (a.min(b), a.max(b));
        let q = (c.min(d), c.max(d));
        Some(QuartetChoice {
            split: if p.0 < q.0 { (p, q) } else { (q, p) },
        })
    }

    pub(crate) fn from_sides(side: LeafSet, other: LeafSet) -> Option<Self> {
        let a = side.to_vec();
        let b = other.to_vec();
        if a.len() != 2 || b.len() != 2 {
            return None;
        }
        QuartetChoice::new(a[0], a[1], b[0], b[1])
    }

    pub fn split(self) -> ((LeafLabel, LeafLabel), (LeafLabel, LeafLabel)) {
        self.split
    }

    pub fn leaves(self) -> LeafSet {
        let ((a, b), (c, d)) = self.split;
        [a, b, c, d].into_iter().collect()
    }
}

impl fmt::Display for QuartetChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ((a, b), (c, d)) = self.split;
        write!(f, "{a},{b}|{c},{d}")
    }
}
