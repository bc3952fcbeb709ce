//! Branch-and-bound kernel search checked against plain enumeration of the
//! whole entry box.

use std::time::Instant;

use disentangle_core::encoding::{min_kernel_one_norm, SmallComplexInstance};

/// Every table in `[-bound, bound]^cells`; returns the least nonzero
/// 1-norm among tables whose facet marginals vanish.
fn box_oracle(inst: &SmallComplexInstance, bound: i64) -> Option<u64> {
    let dims = inst.dims().to_vec();
    let cells: usize = dims.iter().product();
    let facets = inst.facets();
    let coords: Vec<Vec<usize>> = (0..cells)
        .map(|mut c| {
            let mut v = vec![0; dims.len()];
            for x in (0..dims.len()).rev() {
                v[x] = c % dims[x];
                c /= dims[x];
            }
            v
        })
        .collect();
    let fiber = |f: u32, cell: usize| -> usize {
        (0..dims.len())
            .filter(|&x| f & (1 << x) != 0)
            .fold(0, |m, x| m * dims[x] + coords[cell][x])
    };
    let width = (2 * bound + 1) as usize;
    let total = width.pow(cells as u32);
    let mut best: Option<u64> = None;
    let mut table = vec![0i64; cells];
    for code in 1..total {
        let mut c = code;
        for v in table.iter_mut() {
            *v = (c % width) as i64 - bound;
            c /= width;
        }
        let norm: u64 = table.iter().map(|v| v.unsigned_abs()).sum();
        if norm == 0 || best.is_some_and(|b| norm >= b) {
            continue;
        }
        let in_kernel = facets.iter().all(|&f| {
            let mut sums = std::collections::HashMap::new();
            for (cell, &v) in table.iter().enumerate() {
                *sums.entry(fiber(f, cell)).or_insert(0i64) += v;
            }
            sums.values().all(|&s| s == 0)
        });
        if in_kernel {
            best = Some(norm);
        }
    }
    best
}

#[test]
fn agrees_with_box_enumeration() {
    let cases = [
        (SmallComplexInstance::new(vec![2], &[&[]]).unwrap(), 2),
        (SmallComplexInstance::new(vec![3], &[&[]]).unwrap(), 2),
        (SmallComplexInstance::skeleton(vec![2, 2], 1).unwrap(), 2),
        (SmallComplexInstance::skeleton(vec![2, 3], 1).unwrap(), 1),
        (SmallComplexInstance::skeleton(vec![3, 3], 1).unwrap(), 1),
        (SmallComplexInstance::skeleton(vec![2, 2, 2], 2).unwrap(), 1),
        (SmallComplexInstance::skeleton(vec![2, 2, 2], 1).unwrap(), 1),
        (SmallComplexInstance::skeleton(vec![3, 2, 2], 2).unwrap(), 1),
        // one 2-face and a free vertex
        (
            SmallComplexInstance::new(vec![2, 2, 2], &[&[], &[0], &[1], &[2], &[0, 1]]).unwrap(),
            1,
        ),
    ];
    for (inst, bound) in &cases {
        let expected = box_oracle(inst, *bound);
        let got = min_kernel_one_norm(inst, *bound as u32).unwrap();
        assert_eq!(got, expected, "{inst:?}");
    }
}

#[test]
fn frozen_norms_with_entry_bound_two() {
    // (dims, max face size, expected); expected values from box_oracle
    // where it is feasible, otherwise the 2x2x2 parity table embedded in a
    // corner meets the lower bound 2^s.
    let cases: [(Vec<usize>, usize, u64); 6] = [
        (vec![2], 0, 2),
        (vec![3], 0, 2),
        (vec![2, 2], 1, 4),
        (vec![3, 3], 1, 4),
        (vec![2, 2, 2], 2, 8),
        (vec![3, 2, 2], 2, 8),
    ];
    for (dims, face, expected) in cases {
        let start = Instant::now();
        let inst = SmallComplexInstance::skeleton(dims.clone(), face).unwrap();
        assert_eq!(
            min_kernel_one_norm(&inst, 2).unwrap(),
            Some(expected),
            "{dims:?}"
        );
        println!("{dims:?} -> {expected} in {:?}", start.elapsed());
    }
}

#[test]
fn three_by_three_by_three() {
    let start = Instant::now();
    let inst = SmallComplexInstance::skeleton(vec![3, 3, 3], 2).unwrap();
    assert_eq!(min_kernel_one_norm(&inst, 2).unwrap(), Some(8));
    println!("3x3x3 in {:?}", start.elapsed());
}
