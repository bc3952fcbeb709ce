//! Acceptance suite: one line per criterion, non-zero exit if any fails.

use std::fs;
use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use disentangle_core::disentangle::min_disentangling;
use disentangle_core::humphries::{default_family_pair, pad_family_pair, verify_entangled};
use disentangle_core::verify::{
    bounds_suite, bridge_suite, kahle_suite, rooting_suite, single_tree_suite,
};
use disentangle_core::{g, RootedTopology, TreeMultiset, UnrootedTopology};

const LIMIT_RD1: Duration = Duration::from_secs(5);
const LIMIT_D1: Duration = Duration::from_secs(10);
const LIMIT_K2: Duration = Duration::from_secs(1);
const LIMIT_K3: Duration = Duration::from_secs(5);
const LIMIT_BOUNDS: Duration = Duration::from_secs(120);
const LIMIT_KAHLE: Duration = Duration::from_secs(30);

const BOUNDS_TRIALS: usize = 10_000;
const BOUNDS_SEED: u64 = 2024;
const BRIDGE_TRIALS: usize = 500;
const BRIDGE_SEED: u64 = 7;
const ROOTING_TRIALS: usize = 1000;
const ROOTING_SEED: u64 = 11;
const KAHLE_ENTRY_BOUND: u32 = 2;
const THREAD_COUNTS: [&str; 3] = ["1", "2", "4"];

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    passed: bool,
    detail: String,
}

fn timed(limit: Duration, f: impl FnOnce() -> (bool, String)) -> Outcome {
    let start = Instant::now();
    let (ok, detail) = f();
    let elapsed = start.elapsed();
    let in_time = elapsed <= limit;
    Outcome {
        passed: ok && in_time,
        detail: format!(
            "{detail}; {:.2}s (limit {}s)",
            elapsed.as_secs_f64(),
            limit.as_secs()
        ),
    }
}

fn criterion_1() -> Outcome {
    timed(LIMIT_RD1, || {
        let o = single_tree_suite::<RootedTopology>(5, true).unwrap();
        let ok =
            o.trees == 105 && o.pairs == 5460 && o.min_cardinality == 3 && o.max_cardinality == 3;
        (
            ok,
            format!(
                "{} pairs of {} rooted trees, cardinality {}..={}",
                o.pairs, o.trees, o.min_cardinality, o.max_cardinality
            ),
        )
    })
}

fn criterion_2() -> Outcome {
    timed(LIMIT_D1, || {
        let o = single_tree_suite::<UnrootedTopology>(6, true).unwrap();
        let ok =
            o.trees == 105 && o.pairs == 5460 && o.min_cardinality == 4 && o.max_cardinality == 4;
        (
            ok,
            format!(
                "{} pairs of {} unrooted trees, cardinality {}..={}",
                o.pairs, o.trees, o.min_cardinality, o.max_cardinality
            ),
        )
    })
}

/// Agreement on every `(3k-1)`-subset, the exact minimum, and `g(r)`.
fn family_check(
    odd: &TreeMultiset<RootedTopology>,
    even: &TreeMultiset<RootedTopology>,
    k: usize,
) -> (bool, String) {
    let r = odd.len();
    let entangled = verify_entangled(odd, even, 3 * k - 1).unwrap();
    let res = min_disentangling(odd, even).unwrap();
    let ok = entangled
        && res.cardinality == 3 * k
        && res.cardinality == g(r)
        && res.witness == odd.leaves();
    (
        ok,
        format!(
            "r={r}: entangled at {}: {entangled}, cardinality {} (g={})",
            3 * k - 1,
            res.cardinality,
            g(r)
        ),
    )
}

fn criterion_3() -> Outcome {
    timed(LIMIT_K2, || {
        let pair = default_family_pair(2).unwrap();
        family_check(&pair.odd, &pair.even, 2)
    })
}

fn criterion_4() -> Outcome {
    timed(LIMIT_K3, || {
        let pair = default_family_pair(3).unwrap();
        let subsets = pair.leaves().subsets_of_size(8).count();
        let (ok, detail) = family_check(&pair.odd, &pair.even, 3);
        (
            ok && subsets == 9,
            format!("{subsets} subsets of size 8; {detail}"),
        )
    })
}

fn criterion_5() -> Outcome {
    timed(LIMIT_K3 * 3, || {
        let pair = default_family_pair(3).unwrap();
        let mut ok = true;
        let mut parts = Vec::new();
        for r in [5, 6, 7] {
            let (odd, even) = pad_family_pair(&pair, r, None).unwrap();
            let (good, detail) = family_check(&odd, &even, 3);
            ok &= good && odd.len() == r;
            parts.push(detail);
        }
        (ok, parts.join("; "))
    })
}

fn criterion_6() -> Outcome {
    timed(LIMIT_BOUNDS, || {
        let (ns, rs) = ([7, 8, 9], [2, 3, 4]);
        let rooted =
            bounds_suite::<RootedTopology>(&ns, &rs, BOUNDS_TRIALS, BOUNDS_SEED, 0, true).unwrap();
        let unrooted =
            bounds_suite::<UnrootedTopology>(&ns, &rs, BOUNDS_TRIALS, BOUNDS_SEED, 0, true)
                .unwrap();
        let ok = rooted.passed()
            && unrooted.passed()
            && rooted.max_excess <= 0
            && unrooted.max_excess <= 1;
        (
            ok,
            format!(
                "{} rooted pairs, {} violations, max d - g(r) = {}; {} unrooted pairs, {} violations, max d - g(r) = {}",
                rooted.trials, rooted.violations, rooted.max_excess, unrooted.trials, unrooted.violations, unrooted.max_excess
            ),
        )
    })
}

fn criterion_7() -> Outcome {
    timed(LIMIT_BOUNDS, || {
        let o = bridge_suite(
            &[3, 4, 5, 6, 7, 8],
            &[1, 2, 3, 4],
            BRIDGE_TRIALS,
            BRIDGE_SEED,
            true,
        )
        .unwrap();
        // both directions must actually occur
        let ok = o.passed() && o.agreeing > 0 && o.agreeing < o.comparisons;
        (
            ok,
            format!(
                "{} pairs, {} comparisons ({} agreeing), {} discrepancies",
                o.trials, o.comparisons, o.agreeing, o.discrepancies
            ),
        )
    })
}

fn criterion_8() -> Outcome {
    timed(LIMIT_KAHLE, || {
        let o = kahle_suite(KAHLE_ENTRY_BOUND, true).unwrap();
        let ok = o.passed() && o.cases.iter().all(|c| c.norm.is_some());
        let parts: Vec<String> = o
            .cases
            .iter()
            .map(|c| format!("{}: {:?} >= {}", c.name, c.norm, 1u64 << c.s))
            .collect();
        (ok, parts.join(", "))
    })
}

fn criterion_9() -> Outcome {
    timed(LIMIT_BOUNDS, || {
        let o = rooting_suite(
            &[4, 5, 6, 7, 8, 9],
            &[1, 2, 3, 4],
            ROOTING_TRIALS,
            ROOTING_SEED,
            true,
        )
        .unwrap();
        (
            o.passed(),
            format!(
                "{} pairs, {} still distinct after rooting, {} sets extended, {} violations",
                o.trials, o.rooted_distinct, o.sets_checked, o.violations
            ),
        )
    })
}

fn run_binary(dir: &Path, threads: &str, args: &[&str]) -> (Option<i32>, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_disentangle"))
        .current_dir(dir)
        .arg("--json")
        .args(["--threads", threads])
        .args(args)
        .output()
        .expect("binary runs");
    (out.status.code(), out.stdout)
}

fn criterion_10() -> Outcome {
    let dir = tempfile::TempDir::new().unwrap();
    let p = dir.path();
    fs::write(p.join("t.nwk"), "((1,(2,3)),((4,5),(6,7)));\n").unwrap();
    fs::write(p.join("a.nwk"), "((1,2),((3,4),5));\n((1,3),((2,4),5));\n").unwrap();
    fs::write(p.join("b.nwk"), "((1,2),((3,5),4));\n((1,3),((2,4),5));\n").unwrap();
    let commands: Vec<Vec<&str>> = vec![
        vec!["restrict", "t.nwk", "1,2,4,7"],
        vec!["dnumber", "a.nwk", "b.nwk"],
        vec!["humphries", "--k", "3", "--r", "6", "--out-prefix", "fam"],
        vec!["dnumber", "fam_odd.nwk", "fam_even.nwk"],
        vec!["verify", "rd1", "--n", "5"],
        vec!["verify", "d1", "--n", "5"],
        vec!["verify", "humphries", "--k", "2"],
        vec![
            "verify", "bounds", "--r", "2,3,4", "--n", "7,8", "--trials", "300", "--seed", "5",
        ],
        vec![
            "verify",
            "bounds",
            "--unrooted",
            "--r",
            "2,3",
            "--n",
            "7",
            "--trials",
            "300",
            "--seed",
            "5",
        ],
        vec!["verify", "kahle", "--entry-bound", "1"],
        vec!["verify", "rooting", "--trials", "200", "--seed", "5"],
        vec!["verify", "bridge", "--trials", "100", "--seed", "5"],
        vec![
            "verify", "bounds", "--r", "1", "--n", "5", "--trials", "20", "--seed", "5", "--slack",
            "-1",
        ],
    ];
    let mut mismatches = Vec::new();
    for args in &commands {
        let (code0, base) = run_binary(p, THREAD_COUNTS[0], args);
        let files0 = fs::read(p.join("fam_odd.nwk")).ok();
        if base.is_empty() {
            mismatches.push(format!("{} (no output, exit {code0:?})", args.join(" ")));
            continue;
        }
        for threads in &THREAD_COUNTS[1..] {
            let (code, out) = run_binary(p, threads, args);
            if code != code0 || out != base || fs::read(p.join("fam_odd.nwk")).ok() != files0 {
                mismatches.push(format!("{} with {threads} threads", args.join(" ")));
            }
        }
    }
    Outcome {
        passed: mismatches.is_empty(),
        detail: format!(
            "{} commands x {} thread counts; mismatches: {}",
            commands.len(),
            THREAD_COUNTS.len(),
            if mismatches.is_empty() {
                "none".to_string()
            } else {
                mismatches.join(", ")
            }
        ),
    }
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        (
            "rooted single trees on 5 leaves separate at exactly 3",
            criterion_1,
        ),
        (
            "unrooted single trees on 6 leaves separate at exactly 4",
            criterion_2,
        ),
        (
            "k=2 parity families: entangled at 5, separated at 6",
            criterion_3,
        ),
        (
            "k=3 parity families, r=4: entangled at 8, separated at 9",
            criterion_4,
        ),
        ("k=3 padded families, r=5,6,7", criterion_5),
        ("upper bound on random pairs", criterion_6),
        ("marginal/restriction bridge", criterion_7),
        ("kernel 1-norm lower bound", criterion_8),
        ("rooting reduction", criterion_9),
        ("json reports independent of --threads", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let o = check();
        failed += usize::from(!o.passed);
        println!(
            "criterion {:>2} [{}] {name}: {}",
            i + 1,
            if o.passed { "PASS" } else { "FAIL" },
            o.detail
        );
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
