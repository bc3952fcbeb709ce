//! Command-line front end: argument parsing, command execution and report
//! rendering. `main` only wires these to the process.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use disentangle_core::disentangle::{min_disentangling, min_disentangling_par};
use disentangle_core::humphries;
use disentangle_core::tree::Topology;
use disentangle_core::tree::{parse_newick, Topo, TreeMode};
use disentangle_core::verify::{self, Counterexample};
use disentangle_core::{Error, LabelMap, LeafSet, RootedTopology, TreeMultiset, UnrootedTopology};

pub const EXIT_OK: i32 = 0;
pub const EXIT_OTHER: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_LABEL: i32 = 3;
pub const EXIT_IDENTICAL: i32 = 4;
pub const EXIT_COUNTEREXAMPLE: i32 = 5;

/// Largest `k` accepted by the `humphries` command.
pub const MAX_CLI_K: usize = 6;

#[derive(Debug, Parser)]
#[command(
    name = "disentangle",
    version,
    about = "Disentangling sets for multisets of leaf-labeled trees"
)]
pub struct Cli {
    /// Emit the JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Worker threads for parallel search; output does not depend on it.
    #[arg(long, global = true, value_name = "N")]
    pub threads: Option<usize>,
    /// Report wall-clock time as `elapsed_ms` (otherwise null).
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Clone, Copy)]
#[group(multiple = false)]
pub struct ModeArgs {
    /// Trees are rooted (default).
    #[arg(long)]
    pub rooted: bool,
    /// Trees are unrooted.
    #[arg(long)]
    pub unrooted: bool,
}

impl ModeArgs {
    fn mode(self) -> TreeMode {
        if self.unrooted {
            TreeMode::Unrooted
        } else {
            TreeMode::Rooted
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Rd1,
    D1,
    Humphries,
    Bounds,
    Kahle,
    Rooting,
    Bridge,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Restrict a tree to a subset of its leaves.
    Restrict {
        tree_file: PathBuf,
        /// Comma-separated leaf labels.
        labels: String,
        #[command(flatten)]
        mode: ModeArgs,
    },
    /// Minimum disentangling set of two multiset files.
    Dnumber {
        file1: PathBuf,
        file2: PathBuf,
        #[command(flatten)]
        mode: ModeArgs,
    },
    /// Write the odd and even parity families for `k` gadgets.
    Humphries {
        #[arg(long)]
        k: usize,
        /// Family size; defaults to `2^(k-1)`.
        #[arg(long)]
        r: Option<usize>,
        /// Base tree on leaves 1..k (default: caterpillar).
        #[arg(long)]
        base: Option<String>,
        /// Files are written to `<prefix>_odd.nwk` and `<prefix>_even.nwk`.
        #[arg(long)]
        out_prefix: PathBuf,
    },
    /// Run a verification suite.
    Verify {
        suite: Suite,
        /// Leaf counts (comma-separated for random suites).
        #[arg(long, value_delimiter = ',')]
        n: Vec<usize>,
        /// Multiset sizes (comma-separated).
        #[arg(long, value_delimiter = ',')]
        r: Vec<usize>,
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        /// Use unrooted trees in the bounds suite.
        #[arg(long)]
        unrooted: bool,
        /// Added to the bound checked by the bounds suite; negative values
        /// test a claim stronger than the proven bound.
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        slack: i64,
        #[arg(long, default_value_t = 2)]
        entry_bound: u32,
        #[arg(long, default_value_t = 3)]
        k: usize,
        /// Base tree for the humphries suite.
        #[arg(long)]
        base: Option<String>,
    },
}

/// A failed command: exit code and message.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_PARSE,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if e.is_parse_error() {
            EXIT_PARSE
        } else if e.is_label_error() {
            EXIT_LABEL
        } else if matches!(e, Error::IdenticalMultisets) {
            EXIT_IDENTICAL
        } else {
            EXIT_OTHER
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

/// Command name, echoed inputs and payload of a finished command.
#[derive(Debug)]
pub struct RunReport {
    pub command: &'static str,
    pub inputs: Value,
    pub result: Value,
    pub elapsed_ms: Option<u64>,
    /// Plain text for the default output mode.
    pub text: String,
    pub exit_code: i32,
}

impl RunReport {
    /// Serialization with sorted keys.
    pub fn to_json(&self) -> String {
        let value = json!({
            "command": self.command,
            "inputs": self.inputs,
            "result": self.result,
            "elapsed_ms": self.elapsed_ms,
        });
        serde_json::to_string_pretty(&value).expect("json values serialize")
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure {
        code: EXIT_OTHER,
        message: format!("{}: {e}", path.display()),
    })
}

fn mode_name(mode: TreeMode) -> &'static str {
    match mode {
        TreeMode::Rooted => "rooted",
        TreeMode::Unrooted => "unrooted",
    }
}

fn set_names(set: LeafSet, labels: &LabelMap) -> Vec<String> {
    set.iter().map(|l| labels.display(l)).collect()
}

fn multiset_json<T: Topology>(s: &TreeMultiset<T>, labels: &LabelMap) -> Value {
    json!(s.to_newick_lines(labels))
}

fn pair_json<T: Topology>(pair: &Counterexample<T>, labels: &LabelMap) -> Value {
    json!({ "s1": multiset_json(&pair.0, labels), "s2": multiset_json(&pair.1, labels) })
}

/// `key: value` lines for each field of an object, strings unquoted.
fn render_fields(obj: &Value) -> String {
    let mut out = String::new();
    if let Value::Object(map) = obj {
        for (k, v) in map {
            let shown = match v {
                Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            out.push_str(&format!("{k}: {shown}\n"));
        }
    }
    out
}

fn cmd_restrict(
    tree_file: &Path,
    labels_arg: &str,
    mode: TreeMode,
) -> Result<(Value, Value, String), Failure> {
    let text = read(tree_file)?;
    let mut labels = LabelMap::new();
    let tree = parse_newick(text.trim(), mode, &mut labels)?;
    let mut k = LeafSet::EMPTY;
    let names: Vec<&str> = labels_arg
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .collect();
    for name in &names {
        k = k.with(labels.resolve(name)?);
    }
    let restricted = match &tree {
        Topo::Rooted(t) => Topo::Rooted(t.restrict(k)?),
        Topo::Unrooted(t) => Topo::Unrooted(t.restrict(k)?),
    };
    let newick = restricted.to_newick(&labels);
    let inputs = json!({
        "tree_file": tree_file.display().to_string(),
        "labels": names,
        "mode": mode_name(mode),
    });
    let result = json!({ "newick": newick, "leaves": k.len() });
    Ok((inputs, result, format!("{newick}\n")))
}

fn dnumber_typed<T: Topology>(t1: &str, t2: &str, parallel: bool) -> Result<Value, Failure> {
    let mut labels = LabelMap::new();
    let s1 = TreeMultiset::<T>::parse(t1, &mut labels)?;
    let s2 = TreeMultiset::<T>::parse(t2, &mut labels)?;
    let res = if parallel {
        min_disentangling_par(&s1, &s2)?
    } else {
        min_disentangling(&s1, &s2)?
    };
    Ok(json!({
        "cardinality": res.cardinality,
        "witness": set_names(res.witness, &labels),
        "n": s1.leaves().len(),
        "r": s1.len(),
    }))
}

fn cmd_dnumber(
    f1: &Path,
    f2: &Path,
    mode: TreeMode,
    parallel: bool,
) -> Result<(Value, Value, String), Failure> {
    let (t1, t2) = (read(f1)?, read(f2)?);
    let result = match mode {
        TreeMode::Rooted => dnumber_typed::<RootedTopology>(&t1, &t2, parallel)?,
        TreeMode::Unrooted => dnumber_typed::<UnrootedTopology>(&t1, &t2, parallel)?,
    };
    let witness: Vec<&str> = result["witness"]
        .as_array()
        .expect("witness list")
        .iter()
        .filter_map(Value::as_str)
        .collect();
    let text = format!(
        "cardinality: {}\nwitness: {}\n",
        result["cardinality"],
        witness.join(",")
    );
    let inputs = json!({
        "file1": f1.display().to_string(),
        "file2": f2.display().to_string(),
        "mode": mode_name(mode),
    });
    Ok((inputs, result, text))
}

fn parse_base(base: Option<&str>) -> Result<Option<RootedTopology>, Failure> {
    base.map(|text| {
        let mut labels = LabelMap::numeric();
        RootedTopology::parse(text, &mut labels).map_err(Failure::from)
    })
    .transpose()
}

fn check_cli_k(k: usize) -> Result<(), Failure> {
    if (1..=MAX_CLI_K).contains(&k) {
        Ok(())
    } else {
        Err(Failure::usage(format!(
            "k must be in 1..={MAX_CLI_K}, got {k}"
        )))
    }
}

fn cmd_humphries(
    k: usize,
    r: Option<usize>,
    base: Option<&str>,
    prefix: &Path,
) -> Result<(Value, Value, String), Failure> {
    check_cli_k(k)?;
    let base_tree = parse_base(base)?;
    let pair = match &base_tree {
        Some(b) => humphries::build_family_pair(k, b)?,
        None => humphries::default_family_pair(k)?,
    };
    let r = r.unwrap_or(pair.family_size());
    let (odd, even) = humphries::pad_family_pair(&pair, r, None).map_err(|e| Failure {
        code: EXIT_OTHER,
        message: e.to_string(),
    })?;
    let level = 3 * k - 1;
    let entangled = level < pair.leaves().len() && humphries::verify_entangled(&odd, &even, level)?;
    let differ = odd != even;
    if !(entangled && differ) {
        return Err(Failure {
            code: EXIT_COUNTEREXAMPLE,
            message: "constructed families are not entangled".into(),
        });
    }
    let labels = humphries::label_map(k);
    let odd_path = PathBuf::from(format!("{}_odd.nwk", prefix.display()));
    let even_path = PathBuf::from(format!("{}_even.nwk", prefix.display()));
    for (path, s) in [(&odd_path, &odd), (&even_path, &even)] {
        fs::write(path, s.to_text(&labels)).map_err(|e| Failure {
            code: EXIT_OTHER,
            message: format!("{}: {e}", path.display()),
        })?;
    }
    let inputs = json!({
        "k": k,
        "r": r,
        "base": base_tree.as_ref().map(|b| b.to_newick(&LabelMap::numeric())),
        "out_prefix": prefix.display().to_string(),
    });
    let result = json!({
        "n": pair.leaves().len(),
        "r": r,
        "entangled_level": level,
        "cardinality": level + 1,
        "odd_file": odd_path.display().to_string(),
        "even_file": even_path.display().to_string(),
    });
    let text = format!(
        "wrote {} and {} ({r} trees each on {} leaves)\nentangled on every {level}-leaf subset; disentangled by all {} leaves\n",
        odd_path.display(),
        even_path.display(),
        pair.leaves().len(),
        level + 1
    );
    Ok((inputs, result, text))
}

struct VerifyOpts<'a> {
    suite: Suite,
    n: &'a [usize],
    r: &'a [usize],
    trials: Option<usize>,
    seed: Option<u64>,
    unrooted: bool,
    slack: i64,
    entry_bound: u32,
    k: usize,
    base: Option<&'a str>,
}

fn or_default(values: &[usize], default: &[usize]) -> Vec<usize> {
    if values.is_empty() {
        default.to_vec()
    } else {
        values.to_vec()
    }
}

fn single(what: &str, values: &[usize], default: usize) -> Result<usize, Failure> {
    match values {
        [] => Ok(default),
        [v] => Ok(*v),
        _ => Err(Failure::usage(format!(
            "--{what} takes a single value for this suite"
        ))),
    }
}

fn require_seed(seed: Option<u64>) -> Result<u64, Failure> {
    seed.ok_or_else(|| Failure::usage("this suite is randomized and requires --seed"))
}

fn suite_name(suite: Suite) -> &'static str {
    match suite {
        Suite::Rd1 => "rd1",
        Suite::D1 => "d1",
        Suite::Humphries => "humphries",
        Suite::Bounds => "bounds",
        Suite::Kahle => "kahle",
        Suite::Rooting => "rooting",
        Suite::Bridge => "bridge",
    }
}

fn single_tree_json<T: Topology>(o: &verify::SingleTreeOutcome<T>) -> (bool, Value) {
    let labels = LabelMap::numeric();
    let mut v = json!({
        "n": o.n,
        "trees": o.trees,
        "pairs": o.pairs,
        "expected": o.expected,
        "min_cardinality": o.min_cardinality,
        "max_cardinality": o.max_cardinality,
    });
    if let Some(pair) = &o.counterexample {
        v["counterexample"] = pair_json(pair, &labels);
    }
    (o.passed(), v)
}

fn cmd_verify(o: &VerifyOpts, parallel: bool) -> Result<(Value, Value, String), Failure> {
    let mut inputs = Map::new();
    inputs.insert("suite".into(), json!(suite_name(o.suite)));
    let (passed, mut result) = match o.suite {
        Suite::Rd1 | Suite::D1 => {
            let rooted = o.suite == Suite::Rd1;
            let n = single("n", o.n, if rooted { 5 } else { 6 })?;
            inputs.insert("n".into(), json!(n));
            if rooted {
                single_tree_json(&verify::single_tree_suite::<RootedTopology>(n, parallel)?)
            } else {
                single_tree_json(&verify::single_tree_suite::<UnrootedTopology>(n, parallel)?)
            }
        }
        Suite::Humphries => {
            check_cli_k(o.k)?;
            let base = parse_base(o.base)?;
            inputs.insert("k".into(), json!(o.k));
            inputs.insert(
                "base".into(),
                json!(base.as_ref().map(|b| b.to_newick(&LabelMap::numeric()))),
            );
            let out = verify::humphries_suite(o.k, base.as_ref())?;
            let cases: Vec<Value> = out
                .cases
                .iter()
                .map(|c| {
                    json!({
                        "r": c.r,
                        "entangled_below": c.entangled_below,
                        "differ_on_all": c.differ_on_all,
                        "bound": c.bound,
                        "pass": c.passed(out.k),
                    })
                })
                .collect();
            let mut v = json!({
                "k": out.k,
                "n": out.n,
                "cardinality": out.cardinality(),
                "cases": cases,
            });
            if let Some(pair) = &out.counterexample {
                v["counterexample"] = pair_json(pair, &humphries::label_map(o.k));
            }
            (out.passed(), v)
        }
        Suite::Bounds => {
            let seed = require_seed(o.seed)?;
            let ns = or_default(o.n, &[7]);
            let rs = or_default(o.r, &[2]);
            let trials = o.trials.unwrap_or(1000);
            for (k, v) in [
                ("n", json!(ns)),
                ("r", json!(rs)),
                ("trials", json!(trials)),
                ("seed", json!(seed)),
            ] {
                inputs.insert(k.into(), v);
            }
            inputs.insert(
                "mode".into(),
                json!(if o.unrooted { "unrooted" } else { "rooted" }),
            );
            inputs.insert("slack".into(), json!(o.slack));
            if o.unrooted {
                bounds_json(&verify::bounds_suite::<UnrootedTopology>(
                    &ns, &rs, trials, seed, o.slack, parallel,
                )?)
            } else {
                bounds_json(&verify::bounds_suite::<RootedTopology>(
                    &ns, &rs, trials, seed, o.slack, parallel,
                )?)
            }
        }
        Suite::Kahle => {
            inputs.insert("entry_bound".into(), json!(o.entry_bound));
            let out = verify::kahle_suite(o.entry_bound, parallel)?;
            let cases: Vec<Value> = out
                .cases
                .iter()
                .map(|c| {
                    json!({
                        "instance": c.name,
                        "s": c.s,
                        "lower_bound": 1u64 << c.s,
                        "min_norm": c.norm,
                        "pass": c.passed(),
                    })
                })
                .collect();
            (
                out.passed(),
                json!({ "entry_bound": out.entry_bound, "cases": cases }),
            )
        }
        Suite::Rooting => {
            let seed = require_seed(o.seed)?;
            let ns = or_default(o.n, &[4, 5, 6, 7, 8, 9]);
            let rs = or_default(o.r, &[1, 2, 3, 4]);
            let trials = o.trials.unwrap_or(1000);
            for (k, v) in [
                ("n", json!(ns)),
                ("r", json!(rs)),
                ("trials", json!(trials)),
                ("seed", json!(seed)),
            ] {
                inputs.insert(k.into(), v);
            }
            let out = verify::rooting_suite(&ns, &rs, trials, seed, parallel)?;
            let mut v = json!({
                "trials": out.trials,
                "rooted_distinct": out.rooted_distinct,
                "sets_checked": out.sets_checked,
                "violations": out.violations,
            });
            if let Some((sets, pair)) = &out.counterexample {
                let labels = LabelMap::numeric();
                let mut c = pair_json(pair, &labels);
                c["sets"] = json!(sets
                    .iter()
                    .map(|k| set_names(*k, &labels))
                    .collect::<Vec<_>>());
                v["counterexample"] = c;
            }
            (out.passed(), v)
        }
        Suite::Bridge => {
            let seed = require_seed(o.seed)?;
            let ns = or_default(o.n, &[3, 4, 5, 6, 7, 8]);
            let rs = or_default(o.r, &[1, 2, 3, 4]);
            let trials = o.trials.unwrap_or(500);
            for (k, v) in [
                ("n", json!(ns)),
                ("r", json!(rs)),
                ("trials", json!(trials)),
                ("seed", json!(seed)),
            ] {
                inputs.insert(k.into(), v);
            }
            let out = verify::bridge_suite(&ns, &rs, trials, seed, parallel)?;
            let mut v = json!({
                "trials": out.trials,
                "comparisons": out.comparisons,
                "agreeing": out.agreeing,
                "discrepancies": out.discrepancies,
            });
            if let Some((budget, pair)) = &out.counterexample {
                let mut c = pair_json(pair, &LabelMap::numeric());
                c["budget"] = json!(budget);
                v["counterexample"] = c;
            }
            (out.passed(), v)
        }
    };
    result["pass"] = json!(passed);
    let text = format!(
        "{}: {}\n{}",
        suite_name(o.suite),
        if passed { "pass" } else { "FAIL" },
        render_fields(&result)
    );
    Ok((Value::Object(inputs), result, text))
}

fn bounds_json<T: Topology>(o: &verify::BoundsOutcome<T>) -> (bool, Value) {
    let mut v = json!({
        "rooted": o.rooted,
        "trials": o.trials,
        "max_cardinality": o.max_cardinality,
        "max_excess_over_g": o.max_excess,
        "violations": o.violations,
    });
    if let Some((rep, pair)) = &o.counterexample {
        let labels = LabelMap::numeric();
        let mut c = pair_json(pair, &labels);
        c["cardinality"] = json!(rep.cardinality);
        c["bound"] = json!(rep.bound);
        c["witness"] = json!(set_names(rep.witness, &labels));
        v["counterexample"] = c;
    }
    (o.passed(), v)
}

/// Runs a parsed command. A verification failure is a report with exit
/// code 5; every other failure is an `Err`.
pub fn run(cli: &Cli) -> Result<RunReport, Failure> {
    if let Some(n) = cli.threads {
        if n == 0 {
            return Err(Failure::usage("--threads must be at least 1"));
        }
        // a second call in the same process keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
    let parallel = cli.threads != Some(1);
    let start = Instant::now();
    let (command, (inputs, result, text)) = match &cli.command {
        Command::Restrict {
            tree_file,
            labels,
            mode,
        } => ("restrict", cmd_restrict(tree_file, labels, mode.mode())?),
        Command::Dnumber { file1, file2, mode } => {
            ("dnumber", cmd_dnumber(file1, file2, mode.mode(), parallel)?)
        }
        Command::Humphries {
            k,
            r,
            base,
            out_prefix,
        } => (
            "humphries",
            cmd_humphries(*k, *r, base.as_deref(), out_prefix)?,
        ),
        Command::Verify {
            suite,
            n,
            r,
            trials,
            seed,
            unrooted,
            slack,
            entry_bound,
            k,
            base,
        } => {
            let opts = VerifyOpts {
                suite: *suite,
                n,
                r,
                trials: *trials,
                seed: *seed,
                unrooted: *unrooted,
                slack: *slack,
                entry_bound: *entry_bound,
                k: *k,
                base: base.as_deref(),
            };
            ("verify", cmd_verify(&opts, parallel)?)
        }
    };
    let exit_code = if result.get("pass") == Some(&Value::Bool(false)) {
        EXIT_COUNTEREXAMPLE
    } else {
        EXIT_OK
    };
    Ok(RunReport {
        command,
        inputs,
        result,
        elapsed_ms: cli.timing.then(|| start.elapsed().as_millis() as u64),
        text,
        exit_code,
    })
}
