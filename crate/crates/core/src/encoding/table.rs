use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use crate::disentangle::TreeMultiset;
use crate::error::{Error, Result};
use crate::tree::{LeafSet, LeafTriple, RootedTopology, TripletChoice};

/// Sparse integer vector in the tensor space whose axes are 3-subsets of
/// leaves, each axis having the three rooted triples as coordinates.
///
/// A key holds one triple index (apex position, see
/// [`TripletChoice::index`]) per axis, axes in sorted order. Zero entries
/// are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseTableVector {
    leaves: LeafSet,
    axes: Vec<LeafTriple>,
    entries: BTreeMap<Vec<u8>, i64>,
}

impl SparseTableVector {
    /// The zero vector over `axes` (sorted and deduplicated here).
    pub fn zero(leaves: LeafSet, mut axes: Vec<LeafTriple>) -> Result<Self> {
        axes.sort_unstable();
        axes.dedup();
        if axes.iter().any(|t| !t.as_set().is_subset(leaves)) {
            return Err(Error::MalformedAxes);
        }
        Ok(SparseTableVector {
            leaves,
            axes,
            entries: BTreeMap::new(),
        })
    }

    pub fn leaves(&self) -> LeafSet {
        self.leaves
    }

    pub fn axes(&self) -> &[LeafTriple] {
        &self.axes
    }

    /// Whether the axes are every 3-subset of the leaves.
    pub fn is_full(&self) -> bool {
        self.axes.len() == self.leaves.subsets_of_size(3).count()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&[u8], i64)> {
        self.entries.iter().map(|(k, &v)| (k.as_slice(), v))
    }

    pub fn get(&self, key: &[u8]) -> i64 {
        self.entries.get(key).copied().unwrap_or(0)
    }

    /// Number of nonzero entries.
    pub fn support_size(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Adds `value` at `key`, dropping the entry if it becomes zero.
    pub fn add_at(&mut self, key: Vec<u8>, value: i64) {
        assert_eq!(key.len(), self.axes.len(), "key length must match axes");
        assert!(key.iter().all(|&x| x < 3), "triple index out of range");
        if value == 0 {
            return;
        }
        match self.entries.entry(key) {
            Entry::Vacant(slot) => {
                slot.insert(value);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += value;
                if *slot.get() == 0 {
                    slot.remove();
                }
            }
        }
    }

    pub fn one_norm(&self) -> u64 {
        self.entries.values().map(|v| v.unsigned_abs()).sum()
    }

    /// Sum of all entries.
    pub fn total(&self) -> i64 {
        self.entries.values().sum()
    }

    pub fn scaled(&self, a: i64) -> Self {
        let mut out = SparseTableVector {
            leaves: self.leaves,
            axes: self.axes.clone(),
            entries: BTreeMap::new(),
        };
        if a != 0 {
            out.entries = self
                .entries
                .iter()
                .map(|(k, &v)| (k.clone(), a * v))
                .collect();
        }
        out
    }

    /// `self + other`; both must share leaves and axes.
    pub fn checked_add(&self, other: &SparseTableVector) -> Result<Self> {
        if self.leaves != other.leaves || self.axes != other.axes {
            return Err(Error::MalformedAxes);
        }
        let mut out = self.clone();
        for (k, &v) in &other.entries {
            out.add_at(k.clone(), v);
        }
        Ok(out)
    }

    /// The triple choices a key assigns to each axis.
    pub fn key_choices(&self, key: &[u8]) -> Vec<TripletChoice> {
        self.axes
            .iter()
            .zip(key)
            .map(|(&t, &i)| TripletChoice::from_index(t, i))
            .collect()
    }
}

/// The key of `t` over `axes`: its rooted triple on every axis.
pub fn tree_key(t: &RootedTopology, axes: &[LeafTriple]) -> Vec<u8> {
    axes.iter()
        .map(|a| t.triple_unchecked(a.as_set()).index())
        .collect()
}

fn full_axes(leaves: LeafSet) -> Result<Vec<LeafTriple>> {
    if leaves.len() < 3 {
        return Err(Error::TooFewLeaves {
            found: leaves.len(),
            min: 3,
        });
    }
    Ok(LeafTriple::all_in(leaves))
}

/// `e_T`: the unit vector at the key listing every rooted triple of `t`.
pub fn encode_tree(t: &RootedTopology) -> Result<SparseTableVector> {
    let axes = full_axes(t.leaves())?;
    let mut u = SparseTableVector::zero(t.leaves(), axes)?;
    let key = tree_key(t, &u.axes);
    u.add_at(key, 1);
    Ok(u)
}

/// `u_S = Σ e_T` over the members of `s`.
pub fn encode_multiset(s: &TreeMultiset<RootedTopology>) -> Result<SparseTableVector> {
    let axes = full_axes(s.leaves())?;
    let mut u = SparseTableVector::zero(s.leaves(), axes)?;
    for t in s.members() {
        let key = tree_key(t, &u.axes);
        u.add_at(key, 1);
    }
    Ok(u)
}

/// Rebuilds the rooted binary tree displaying the given rooted triples with
/// Aho's BUILD: split the leaves into the connected components of the
/// graph joining each cherry, then recurse. Returns `None` if the triples
/// are not those of a single rooted binary tree on `leaves`.
pub fn tree_from_triples(leaves: LeafSet, triples: &[TripletChoice]) -> Option<RootedTopology> {
    fn build(set: LeafSet, triples: &[TripletChoice], clusters: &mut Vec<LeafSet>) -> Option<()> {
        if set.len() <= 1 {
            return Some(());
        }
        clusters.push(set);
        if set.len() == 2 {
            return Some(());
        }
        // components of the cherry graph restricted to `set`
        let mut comp: Vec<LeafSet> = set.iter().map(LeafSet::singleton).collect();
        for t in triples {
            let (x, y) = t.cherry();
            if !set.contains(x) || !set.contains(y) || !set.contains(t.apex()) {
                continue;
            }
            let ix = comp.iter().position(|c| c.contains(x))?;
            let iy = comp.iter().position(|c| c.contains(y))?;
            if ix != iy {
                let merged = comp[ix].union(comp[iy]);
                let (lo, hi) = (ix.min(iy), ix.max(iy));
                comp.swap_remove(hi);
                comp[lo] = merged;
            }
        }
        if comp.len() != 2 {
            return None;
        }
        build(comp[0], triples, clusters)?;
        build(comp[1], triples, clusters)
    }
    let mut clusters = Vec::new();
    build(leaves, triples, &mut clusters)?;
    let t = RootedTopology::from_clusters(leaves, clusters).ok()?;
    let mut shown: Vec<TripletChoice> = LeafTriple::all_in(leaves)
        .into_iter()
        .map(|a| t.triple_unchecked(a.as_set()))
        .collect();
    let mut given = triples.to_vec();
    shown.sort_unstable();
    given.sort_unstable();
    given.dedup();
    (shown == given).then_some(t)
}

/// Recovers the multiset from `u_S`, reading each key as a tree with its
/// multiplicity.
pub fn decode_multiset(u: &SparseTableVector) -> Result<TreeMultiset<RootedTopology>> {
    if !u.is_full() {
        return Err(Error::MalformedAxes);
    }
    let mut members = Vec::new();
    for (key, v) in u.entries() {
        if v < 0 {
            return Err(Error::NotRealizable);
        }
        let t = tree_from_triples(u.leaves, &u.key_choices(key)).ok_or(Error::NotRealizable)?;
        members.extend(std::iter::repeat_n(t, v as usize));
    }
    TreeMultiset::new(members)
}

/// `π_L(u)`: sums `u` over all axes outside `l`. The result's axes are `l`
/// sorted; `l` must be a subset of `u`'s axes.
pub fn marginal(u: &SparseTableVector, l: &[LeafTriple]) -> Result<SparseTableVector> {
    let mut out = SparseTableVector::zero(u.leaves, l.to_vec())?;
    let positions = out
        .axes
        .iter()
        .map(|a| u.axes.binary_search(a).map_err(|_| Error::MalformedAxes))
        .collect::<Result<Vec<usize>>>()?;
    for (key, v) in &u.entries {
        let projected: Vec<u8> = positions.iter().map(|&p| key[p]).collect();
        out.add_at(projected, *v);
    }
    Ok(out)
}
