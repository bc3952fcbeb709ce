use std::fmt;

use super::newick::{self, Shape};
use super::{LabelMap, LeafLabel, LeafSet, TripletChoice};
use crate::error::{Error, Result};

/// A leaf-labeled rooted binary tree.
///
/// Stored as its sorted list of non-singleton clusters (the leaf sets below
/// each internal node, root included). A rooted binary tree is determined by
/// its clusters, so two topologies are equal exactly when the stored lists
/// are identical. Output orders children so the one holding the smaller
/// minimum leaf comes first.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RootedTopology {
    leaves: LeafSet,
    clusters: Vec<LeafSet>,
}

impl RootedTopology {
    /// The one-leaf tree.
    pub fn leaf(l: LeafLabel) -> Self {
        RootedTopology {
            leaves: LeafSet::singleton(l),
            clusters: Vec::new(),
        }
    }

    pub fn cherry(a: LeafLabel, b: LeafLabel) -> Self {
        let leaves = LeafSet::singleton(a).with(b);
        RootedTopology::from_clusters_unchecked(leaves, vec![leaves])
    }

    pub(crate) fn from_clusters_unchecked(leaves: LeafSet, mut clusters: Vec<LeafSet>) -> Self {
        clusters.sort_unstable();
        clusters.dedup();
        RootedTopology { leaves, clusters }
    }

    /// Builds a topology from its clusters, checking that they form a
    /// binary hierarchy on `leaves`.
    pub fn from_clusters(leaves: LeafSet, clusters: Vec<LeafSet>) -> Result<Self> {
        let t = RootedTopology::from_clusters_unchecked(leaves, clusters);
        let n = leaves.len();
        if n == 0 {
            return Err(Error::TooFewLeaves { found: 0, min: 1 });
        }
        let ok = t.clusters.len() == n - 1
            && (n == 1 || t.clusters.contains(&leaves))
            && t.clusters
                .iter()
                .all(|c| c.len() >= 2 && c.is_subset(leaves))
            && t.clusters.iter().enumerate().all(|(i, a)| {
                t.clusters[i + 1..]
                    .iter()
                    .all(|b| a.is_disjoint(*b) || a.is_subset(*b) || b.is_subset(*a))
            });
        if ok {
            Ok(t)
        } else {
            Err(Error::Infeasible(
                "clusters do not form a rooted binary tree".into(),
            ))
        }
    }

    pub fn leaves(&self) -> LeafSet {
        self.leaves
    }

    pub fn leaf_count(&self) -> usize {
        self.leaves.len()
    }

    /// Leaf sets of the internal nodes, in mask order.
    pub fn clusters(&self) -> &[LeafSet] {
        &self.clusters
    }

    /// The two child leaf sets of the internal node with leaf set `cluster`,
    /// the one containing the smaller minimum leaf first.
    pub fn children(&self, cluster: LeafSet) -> Option<(LeafSet, LeafSet)> {
        if cluster.len() < 2 || !self.clusters.contains(&cluster) {
            return None;
        }
        let m = cluster.min()?;
        let first = self
            .clusters
            .iter()
            .filter(|c| c.contains(m) && c.len() < cluster.len() && c.is_subset(cluster))
            .max_by_key(|c| c.len())
            .copied()
            .unwrap_or_else(|| LeafSet::singleton(m));
        Some((first, cluster.difference(first)))
    }

    /// The induced rooted binary tree on `k`, with degree-two vertices
    /// suppressed.
    pub fn restrict(&self, k: LeafSet) -> Result<Self> {
        if k.is_empty() {
            return Err(Error::RestrictionTooSmall { found: 0, min: 1 });
        }
        if !k.is_subset(self.leaves) {
            return Err(Error::NotASubset);
        }
        Ok(self.restrict_unchecked(k))
    }

    pub(crate) fn restrict_unchecked(&self, k: LeafSet) -> Self {
        let clusters = self
            .clusters
            .iter()
            .map(|c| c.intersection(k))
            .filter(|c| c.len() >= 2)
            .collect();
        RootedTopology::from_clusters_unchecked(k, clusters)
    }

    /// The rooted triple displayed on the 3-set `s`.
    pub fn triple(&self, s: LeafSet) -> Result<TripletChoice> {
        if s.len() != 3 {
            return Err(Error::RestrictionTooSmall {
                found: s.len(),
                min: 3,
            });
        }
        if !s.is_subset(self.leaves) {
            return Err(Error::NotASubset);
        }
        Ok(self.triple_unchecked(s))
    }

    pub(crate) fn triple_unchecked(&self, s: LeafSet) -> TripletChoice {
        let cherry = self
            .clusters
            .iter()
            .map(|c| c.intersection(s))
            .find(|c| c.len() == 2)
            .expect("a binary tree resolves every triple");
        let apex = s.difference(cherry).min().expect("one apex");
        let mut it = cherry.iter();
        TripletChoice::new(apex, it.next().unwrap(), it.next().unwrap()).expect("distinct")
    }

    /// Attach points for a new leaf: every leaf edge (leaves in id order)
    /// followed by every internal edge (clusters in mask order), the root
    /// cluster standing for the edge above the root.
    pub(crate) fn edges(&self) -> impl Iterator<Item = LeafSet> + '_ {
        self.leaves
            .iter()
            .map(LeafSet::singleton)
            .chain(self.clusters.iter().copied())
    }

    pub(crate) fn edge_count(&self) -> usize {
        2 * self.leaves.len() - 1
    }

    /// Subdivides the edge above the node with leaf set `below` and hangs
    /// `x` from the new vertex.
    pub(crate) fn insert_leaf(&self, x: LeafLabel, below: LeafSet) -> Self {
        let mut clusters: Vec<LeafSet> = self
            .clusters
            .iter()
            .map(|&c| {
                if below.is_subset(c) && below != c {
                    c.with(x)
                } else {
                    c
                }
            })
            .collect();
        clusters.push(below.with(x));
        RootedTopology::from_clusters_unchecked(self.leaves.with(x), clusters)
    }

    /// Applies an injective relabeling to every leaf.
    pub fn relabel(&self, f: impl Fn(LeafLabel) -> LeafLabel) -> Self {
        let map = |s: LeafSet| s.iter().map(&f).collect::<LeafSet>();
        RootedTopology::from_clusters_unchecked(
            map(self.leaves),
            self.clusters.iter().map(|&c| map(c)).collect(),
        )
    }

    /// Parses rooted Newick text; every internal node must have two children.
    pub fn parse(text: &str, labels: &mut LabelMap) -> Result<Self> {
        let node = newick::parse_tree(text)?;
        let shape = newick::intern(std::slice::from_ref(&node), labels)?
            .pop()
            .expect("one tree");
        RootedTopology::from_shape(&shape)
    }

    /// Parses with numeric leaf names taken as ids.
    pub fn from_newick(text: &str) -> Result<Self> {
        RootedTopology::parse(text, &mut LabelMap::numeric())
    }

    pub(crate) fn from_shape(shape: &Shape) -> Result<Self> {
        let n = shape.leaves().len();
        if n < 2 {
            return Err(Error::TooFewLeaves { found: n, min: 2 });
        }
        newick::check_arity(shape, 2)?;
        let mut clusters = Vec::with_capacity(n - 1);
        newick::clusters(shape, &mut clusters);
        Ok(RootedTopology::from_clusters_unchecked(
            shape.leaves(),
            clusters,
        ))
    }

    pub(crate) fn write_subtree(&self, set: LeafSet, labels: &LabelMap, out: &mut String) {
        if set.len() == 1 {
            out.push_str(&labels.display(set.min().unwrap()));
            return;
        }
        let (a, b) = self.children(set).expect("internal node");
        out.push('(');
        self.write_subtree(a, labels, out);
        out.push(',');
        self.write_subtree(b, labels, out);
        out.push(')');
    }

    /// Canonical Newick text, `;`-terminated, no whitespace.
    pub fn to_newick(&self, labels: &LabelMap) -> String {
        let mut out = String::new();
        self.write_subtree(self.leaves, labels, &mut out);
        out.push(';');
        out
    }
}

impl fmt::Display for RootedTopology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_newick(&LabelMap::numeric()))
    }
}

impl fmt::Debug for RootedTopology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Rooted({self})")
    }
}
