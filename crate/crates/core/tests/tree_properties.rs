use std::collections::{HashMap, HashSet};

use proptest::prelude::*;
use rand::{seq::SliceRandom, Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use disentangle_core::tree::{
    enumerate_rooted, enumerate_unrooted, random_rooted, random_rooted_on, random_unrooted_on,
    LeafLabel, LeafSet, LeafTriple, RootedTopology, UnrootedTopology,
};

fn random_subset(rng: &mut ChaCha8Rng, of: LeafSet, size: usize) -> LeafSet {
    let mut v = of.to_vec();
    v.shuffle(rng);
    v.into_iter().take(size).collect()
}

#[test]
fn rooted_restriction_is_functorial() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for n in 2..=6 {
        for t in enumerate_rooted(n).unwrap() {
            let leaves = t.leaves();
            let s1 = rng.gen_range(1..=n);
            let k1 = random_subset(&mut rng, leaves, s1);
            let s2 = rng.gen_range(1..=s1);
            let k2 = random_subset(&mut rng, k1, s2);
            let via = t.restrict(k1).unwrap().restrict(k2).unwrap();
            assert_eq!(via, t.restrict(k2).unwrap(), "{t} {k1} {k2}");
        }
    }
}

#[test]
fn unrooted_restriction_is_functorial() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for n in 3..=6 {
        for t in enumerate_unrooted(n).unwrap() {
            let leaves = t.leaves();
            let s1 = rng.gen_range(3..=n);
            let k1 = random_subset(&mut rng, leaves, s1);
            let s2 = rng.gen_range(3..=s1);
            let k2 = random_subset(&mut rng, k1, s2);
            let via = t.restrict(k1).unwrap().restrict(k2).unwrap();
            assert_eq!(via, t.restrict(k2).unwrap(), "{t} {k1} {k2}");
        }
    }
}

#[test]
fn rooted_triples_determine_the_tree() {
    for n in [4, 5] {
        let trees: Vec<RootedTopology> = enumerate_rooted(n).unwrap().collect();
        let profiles: HashSet<Vec<_>> = trees
            .iter()
            .map(|t| {
                LeafTriple::all_in(t.leaves())
                    .into_iter()
                    .map(|s| t.triple(s.as_set()).unwrap())
                    .collect::<Vec<_>>()
            })
            .collect();
        assert_eq!(profiles.len(), trees.len());
    }
}

#[test]
fn quartets_determine_the_tree() {
    for n in [5, 6] {
        let trees: Vec<UnrootedTopology> = enumerate_unrooted(n).unwrap().collect();
        let profiles: HashSet<Vec<_>> = trees
            .iter()
            .map(|t| {
                t.leaves()
                    .subsets_of_size(4)
                    .map(|s| t.quartet(s).unwrap())
                    .collect::<Vec<_>>()
            })
            .collect();
        assert_eq!(profiles.len(), trees.len());
    }
}

#[test]
fn rooting_commutes_with_restriction() {
    let zero = LeafLabel(0);
    for n in 2..=6 {
        for t in enumerate_rooted(n).unwrap() {
            let unrooted = UnrootedTopology::unroot(&t, zero).unwrap();
            for size in 2..=n {
                for k in t.leaves().subsets_of_size(size) {
                    let lhs = unrooted.restrict(k.with(zero)).unwrap();
                    let rhs = UnrootedTopology::unroot(&t.restrict(k).unwrap(), zero).unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
            assert_eq!(unrooted.root_at_leaf(zero).unwrap(), t);
        }
    }
}

#[test]
fn unroot_inverts_root_at_leaf() {
    for t in enumerate_unrooted(6).unwrap() {
        for x in t.leaves() {
            let rooted = t.root_at_leaf(x).unwrap();
            assert_eq!(UnrootedTopology::unroot(&rooted, x).unwrap(), t);
        }
    }
}

/// Independent count of rooted topologies: number of ways to build the
/// tree by choosing, for each new leaf, one of the `2m - 1` edges.
#[test]
fn enumeration_matches_recurrence() {
    let mut count = 1u64;
    for n in 2..=7 {
        count *= 2 * (n as u64 - 1) - 1;
        let seen: HashSet<RootedTopology> = enumerate_rooted(n).unwrap().collect();
        assert_eq!(seen.len() as u64, count, "n={n}");
    }
}

#[test]
fn random_rooted_is_uniform_on_five_leaves() {
    let samples = 10_000;
    let mut freq: HashMap<RootedTopology, usize> = HashMap::new();
    for seed in 0..samples {
        *freq.entry(random_rooted(5, seed).unwrap()).or_default() += 1;
    }
    let all: HashSet<RootedTopology> = enumerate_rooted(5).unwrap().collect();
    assert_eq!(freq.len(), 105);
    assert!(freq.keys().all(|t| all.contains(t)));
    let p = 1.0 / 105.0;
    let mean = samples as f64 * p;
    let sigma = (samples as f64 * p * (1.0 - p)).sqrt();
    for (t, &c) in &freq {
        assert!((c as f64 - mean).abs() <= 5.0 * sigma, "{t}: {c}");
    }
    // chi-square with 104 degrees of freedom; 99.9% quantile is about 155
    let chi2: f64 = freq
        .values()
        .map(|&c| (c as f64 - mean).powi(2) / mean)
        .sum();
    assert!(chi2 < 155.0, "chi2 = {chi2}");
}

/// A restriction traced by hand on a seven-leaf tree: keeping leaves
/// 1, 2, 4 and 7 of `((1,(2,3)),((4,5),(6,7)))` suppresses every vertex left
/// with one child.
#[test]
fn seven_leaf_restriction_by_hand() {
    let t = RootedTopology::from_newick("((1,(2,3)),((4,5),(6,7)));").unwrap();
    let k: LeafSet = [1, 2, 4, 7].into_iter().map(LeafLabel).collect();
    assert_eq!(t.restrict(k).unwrap().to_string(), "((1,2),(4,7));");
    let u = UnrootedTopology::from_newick("((1,(2,3)),(4,5),(6,7));").unwrap();
    assert_eq!(u.restrict(k).unwrap().to_string(), "(1,2,(4,7));");
}

fn shuffle_newick(t: &RootedTopology, rng: &mut ChaCha8Rng) -> String {
    fn go(t: &RootedTopology, set: LeafSet, rng: &mut ChaCha8Rng) -> String {
        if set.len() == 1 {
            return set.min().unwrap().to_string();
        }
        let (a, b) = t.children(set).unwrap();
        let (x, y) = (go(t, a, rng), go(t, b, rng));
        if rng.gen_bool(0.5) {
            format!("({x},{y})")
        } else {
            format!("({y},{x})")
        }
    }
    go(t, t.leaves(), rng) + ";"
}

proptest! {
    #[test]
    fn canonical_form_ignores_child_order(n in 2usize..12, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = random_rooted_on(LeafSet::range(1, n as u32), &mut rng);
        let text = shuffle_newick(&t, &mut rng);
        let parsed = RootedTopology::from_newick(&text).unwrap();
        prop_assert_eq!(&parsed, &t);
        let emitted = parsed.to_string();
        prop_assert_eq!(RootedTopology::from_newick(&emitted).unwrap().to_string(), emitted);
    }

    #[test]
    fn unrooted_emit_parse_is_stable(n in 3usize..12, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = random_unrooted_on(LeafSet::range(0, n as u32 - 1), &mut rng);
        let text = t.to_string();
        let back = UnrootedTopology::from_newick(&text).unwrap();
        prop_assert_eq!(&back, &t);
        prop_assert_eq!(back.to_string(), text);
        // rerooting at any leaf and reattaching is the identity
        for x in t.leaves() {
            let rooted = t.root_at_leaf(x).unwrap();
            prop_assert_eq!(UnrootedTopology::unroot(&rooted, x).unwrap(), t.clone());
        }
    }
}
