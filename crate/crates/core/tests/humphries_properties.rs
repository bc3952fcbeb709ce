use disentangle_core::disentangle::min_disentangling;
use disentangle_core::humphries::{
    build_family_pair, caterpillar, default_family_pair, family_leaves, gadget_leaves, k_for_r,
    pad_family_pair, verify_entangled, GadgetChoice,
};
use disentangle_core::tree::{enumerate_rooted, LeafSet, RootedTopology};

fn bases(k: usize) -> Vec<RootedTopology> {
    if k == 1 {
        vec![caterpillar(1)]
    } else {
        enumerate_rooted(k).unwrap().collect()
    }
}

#[test]
fn families_are_entangled_one_below_the_threshold() {
    for k in 1..=3 {
        for base in bases(k) {
            let pair = build_family_pair(k, &base).unwrap();
            assert_eq!(pair.odd.len(), 1 << (k - 1));
            assert_ne!(pair.odd, pair.even);
            assert!(verify_entangled(&pair.odd, &pair.even, 3 * k - 1).unwrap());
            let res = min_disentangling(&pair.odd, &pair.even).unwrap();
            assert_eq!(res.cardinality, 3 * k, "k={k}");
            assert_eq!(res.witness, family_leaves(k));
        }
    }
}

#[test]
fn threshold_does_not_depend_on_the_base() {
    let k = 4;
    for base in bases(k) {
        let pair = build_family_pair(k, &base).unwrap();
        assert_eq!(
            min_disentangling(&pair.odd, &pair.even)
                .unwrap()
                .cardinality,
            12
        );
    }
}

#[test]
fn padding_keeps_the_threshold() {
    for k in 1..=3 {
        let pair = default_family_pair(k).unwrap();
        for r in (1 << (k - 1))..(1 << k) {
            assert_eq!(k_for_r(r), k);
            let (odd, even) = pad_family_pair(&pair, r, None).unwrap();
            assert_eq!(odd.len(), r);
            assert_eq!(min_disentangling(&odd, &even).unwrap().cardinality, 3 * k);
        }
        assert!(pad_family_pair(&pair, 1 << k, None).is_err());
        if k > 1 {
            assert!(pad_family_pair(&pair, (1 << (k - 1)) - 1, None).is_err());
        }
    }
}

#[test]
fn dropping_a_gadget_leaf_collapses_both_variants() {
    for i in 1..=3 {
        let zero = GadgetChoice {
            index: i,
            bit: false,
        }
        .tree();
        let one = GadgetChoice {
            index: i,
            bit: true,
        }
        .tree();
        assert_ne!(zero, one);
        for pair in gadget_leaves(i).subsets_of_size(2) {
            assert_eq!(zero.restrict(pair).unwrap(), one.restrict(pair).unwrap());
        }
    }
}

#[test]
fn families_agree_on_every_proper_subset() {
    let pair = default_family_pair(3).unwrap();
    let leaves = pair.leaves();
    for drop in leaves {
        let k: LeafSet = leaves.without(drop);
        assert_eq!(
            pair.odd.restrict(k).unwrap(),
            pair.even.restrict(k).unwrap()
        );
    }
}
