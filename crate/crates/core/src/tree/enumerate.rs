use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{LeafLabel, LeafSet, RootedTopology, UnrootedTopology};
use crate::error::{Error, Result};

pub const MAX_ENUMERATE_ROOTED: usize = 8;
pub const MAX_ENUMERATE_UNROOTED: usize = 9;

/// `(2m-1)!! = 1·3·5···(2m-1)`, with `(-1)!! = 1`.
pub fn double_factorial_odd(m: i64) -> u64 {
    let mut acc = 1u64;
    let mut k = m;
    while k > 1 {
        acc *= k as u64;
        k -= 2;
    }
    acc
}

/// Number of rooted binary topologies on `n >= 1` leaves: `(2n-3)!!`.
pub fn rooted_count(n: usize) -> u64 {
    double_factorial_odd(2 * n as i64 - 3)
}

/// Number of trivalent unrooted topologies on `n >= 3` leaves: `(2n-5)!!`.
pub fn unrooted_count(n: usize) -> u64 {
    double_factorial_odd(2 * n as i64 - 5)
}

/// Lazy stream of every rooted binary topology on a leaf list, in
/// leaf-insertion order: leaf `j` is hung from each edge of each tree on the
/// first `j` leaves, edges taken in [`RootedTopology::edges`] order.
pub struct RootedEnumerator {
    labels: Vec<LeafLabel>,
    // stack[j] is the tree on labels[..=j]
    stack: Vec<RootedTopology>,
    choices: Vec<usize>,
    started: bool,
    done: bool,
}

impl RootedEnumerator {
    pub fn new(labels: Vec<LeafLabel>) -> Self {
        let done = labels.is_empty();
        RootedEnumerator {
            labels,
            stack: Vec::new(),
            choices: Vec::new(),
            started: false,
            done,
        }
    }

    fn fill(&mut self) {
        while self.stack.len() < self.labels.len() {
            let j = self.stack.len();
            if j == 0 {
                self.stack.push(RootedTopology::leaf(self.labels[0]));
                continue;
            }
            if self.choices.len() < j {
                self.choices.push(0);
            }
            let parent = &self.stack[j - 1];
            let edge = parent.edges().nth(self.choices[j - 1]).expect("valid edge");
            let next = parent.insert_leaf(self.labels[j], edge);
            self.stack.push(next);
        }
    }
}

impl Iterator for RootedEnumerator {
    type Item = RootedTopology;

    fn next(&mut self) -> Option<RootedTopology> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            self.fill();
            return self.stack.last().cloned();
        }
        // choices[j - 1] picks the edge of stack[j - 1] that receives labels[j]
        let mut j = self.choices.len();
        loop {
            if j == 0 {
                self.done = true;
                return None;
            }
            j -= 1;
            let limit = self.stack[j].edge_count();
            if self.choices[j] + 1 < limit {
                self.choices[j] += 1;
                self.choices.truncate(j + 1);
                self.stack.truncate(j + 1);
                self.fill();
                return self.stack.last().cloned();
            }
        }
    }
}

/// All rooted binary topologies on `{1, ..., n}`, `2 <= n <= 8`.
pub fn enumerate_rooted(n: usize) -> Result<RootedEnumerator> {
    if !(2..=MAX_ENUMERATE_ROOTED).contains(&n) {
        return Err(Error::OutOfRange {
            what: "n",
            value: n as u64,
            range: format!("2..={MAX_ENUMERATE_ROOTED}"),
        });
    }
    Ok(RootedEnumerator::new(
        (1..=n as u32).map(LeafLabel).collect(),
    ))
}

/// All trivalent unrooted topologies on `{1, ..., n}`, `3 <= n <= 9`.
///
/// Leaf 1 is attached above the root of every rooted tree on `{2, ..., n}`.
pub fn enumerate_unrooted(n: usize) -> Result<impl Iterator<Item = UnrootedTopology>> {
    if !(3..=MAX_ENUMERATE_UNROOTED).contains(&n) {
        return Err(Error::OutOfRange {
            what: "n",
            value: n as u64,
            range: format!("3..={MAX_ENUMERATE_UNROOTED}"),
        });
    }
    let labels = (2..=n as u32).map(LeafLabel).collect();
    Ok(RootedEnumerator::new(labels)
        .map(|t| UnrootedTopology::unroot(&t, LeafLabel(1)).expect("leaf 1 is fresh")))
}

/// Uniform random rooted topology on `leaves`: each new leaf (in id order) is
/// hung from a uniformly chosen edge, the edge above the root included.
pub fn random_rooted_on<R: Rng + ?Sized>(leaves: LeafSet, rng: &mut R) -> RootedTopology {
    let mut it = leaves.iter();
    let first = it.next().expect("nonempty leaf set");
    let mut t = RootedTopology::leaf(first);
    for x in it {
        let pick = rng.gen_range(0..t.edge_count());
        let edge = t.edges().nth(pick).expect("in range");
        t = t.insert_leaf(x, edge);
    }
    t
}

/// Uniform random trivalent topology on `leaves` (at least three).
pub fn random_unrooted_on<R: Rng + ?Sized>(leaves: LeafSet, rng: &mut R) -> UnrootedTopology {
    let h = leaves.min().expect("nonempty leaf set");
    let rest = random_rooted_on(leaves.without(h), rng);
    UnrootedTopology::unroot(&rest, h).expect("handle is fresh")
}

/// Uniform random rooted topology on `{1, ..., n}`, deterministic in `seed`.
pub fn random_rooted(n: usize, seed: u64) -> Result<RootedTopology> {
    if !(2..=63).contains(&n) {
        return Err(Error::OutOfRange {
            what: "n",
            value: n as u64,
            range: "2..=63".into(),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(random_rooted_on(LeafSet::range(1, n as u32), &mut rng))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn double_factorials() {
        assert_eq!(rooted_count(2), 1);
        assert_eq!(rooted_count(3), 3);
        assert_eq!(rooted_count(5), 105);
        assert_eq!(unrooted_count(3), 1);
        assert_eq!(unrooted_count(6), 105);
    }

    #[test]
    fn rooted_counts_and_uniqueness() {
        for (n, expected) in [(2, 1), (3, 3), (4, 15), (5, 105), (6, 945)] {
            let all: Vec<_> = enumerate_rooted(n).unwrap().collect();
            assert_eq!(all.len(), expected, "n={n}");
            let distinct: HashSet<_> = all.iter().cloned().collect();
            assert_eq!(distinct.len(), expected);
            assert!(all
                .iter()
                .all(|t| t.leaves() == LeafSet::range(1, n as u32)));
        }
    }

    #[test]
    fn unrooted_counts_and_uniqueness() {
        for (n, expected) in [(3, 1), (4, 3), (5, 15), (6, 105)] {
            let all: HashSet<_> = enumerate_unrooted(n).unwrap().collect();
            assert_eq!(all.len(), expected, "n={n}");
        }
    }

    #[test]
    fn enumeration_order_is_leaf_insertion() {
        let got: Vec<String> = enumerate_rooted(3)
            .unwrap()
            .map(|t| t.to_string())
            .collect();
        assert_eq!(got, vec!["((1,3),2);", "(1,(2,3));", "((1,2),3);"]);
    }

    #[test]
    fn enumeration_guards() {
        assert!(enumerate_rooted(1).is_err());
        assert!(enumerate_rooted(9).is_err());
        assert!(enumerate_unrooted(2).is_err());
        assert!(enumerate_unrooted(10).is_err());
    }

    #[test]
    fn random_is_deterministic() {
        assert_eq!(random_rooted(2, 99).unwrap().to_string(), "(1,2);");
        assert_eq!(random_rooted(9, 7).unwrap(), random_rooted(9, 7).unwrap());
        assert!(random_rooted(1, 0).is_err());
    }
}
