//! Command-line front end. [`run`] is what the `arbor` binary calls.
//!
//! Exit codes: 0 success, 1 validation failure (or a negative verdict
//! where a command promises one), 2 parse or usage error.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;

use crate::classify::{
    count_classes_with, spin_c_support, surfaces_equivalent, ClassifyOptions, EquivalenceReport, ObstructionCase,
};
use crate::form::{
    alexander_polynomial, knot_determinant, knot_signature, seifert_matrix, surface_genus, AdmissibilityLevel,
    FramedPlumbing, Sign,
};
use crate::format::{export_dot, parse_file, serialize, FormatError, TreeFile};
use crate::pairing::{pairing_by_conjugation, pairing_closed_form};
use crate::tree::{enumerate_matched_trees, MatchedTree};

#[derive(Parser, Debug)]
#[command(name = "arbor", version, about = "Matched-tree plumbings and their Seifert surfaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Count matched trees with N matched pairs up to isomorphism
    Enumerate {
        #[arg(long)]
        pairs: usize,
        /// Also print the canonical code of each tree
        #[arg(long)]
        list: bool,
    },
    /// Check framing admissibility
    Check {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Level::Theorem)]
        level: Level,
    },
    /// Print the Seifert matrix in canonical order
    Seifert { file: PathBuf },
    /// Print the pairing on the homology of the complement
    Pairing {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::Conjugation)]
        method: Method,
    },
    /// Alexander polynomial, determinant, signature, genus and Spin^c box
    Invariants { file: PathBuf },
    /// Partition plumbing labelings into equivalence classes
    Classify {
        file: PathBuf,
        /// Classify all 2^|E| labelings of the file's framed tree
        #[arg(long)]
        all_epsilon: bool,
        /// Allow repeated |f| values and search signed permutations (heuristic count)
        #[arg(long)]
        permissive: bool,
        /// List the obstruction for every pair of classes
        #[arg(long)]
        verbose: bool,
    },
    /// Decide whether two labelings of the same framed tree can be equivalent
    Equivalent { first: PathBuf, second: PathBuf },
    /// Emit the chain tree with N matched pairs as a tree file
    Chain {
        #[arg(long)]
        pairs: usize,
        #[arg(long, value_enum, default_value_t = Framing::Corollary)]
        framing: Framing,
        #[arg(long, default_value = "chain")]
        name: String,
    },
    /// Export a tree file as Graphviz DOT
    Dot { file: PathBuf },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Level {
    Basic,
    Theorem,
    Alternating,
}

impl From<Level> for AdmissibilityLevel {
    fn from(l: Level) -> Self {
        match l {
            Level::Basic => AdmissibilityLevel::Basic,
            Level::Theorem => AdmissibilityLevel::Theorem,
            Level::Alternating => AdmissibilityLevel::Alternating,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    Conjugation,
    ClosedForm,
    Both,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Framing {
    /// f(w_i) = 2i + 1, f(b_i) = -2i
    Corollary,
}

enum Failure {
    Parse(String),
    Invalid(String),
}

impl From<FormatError> for Failure {
    fn from(e: FormatError) -> Self {
        match e {
            FormatError::Parse(_) => Failure::Parse(e.to_string()),
            _ => Failure::Invalid(e.to_string()),
        }
    }
}

macro_rules! invalid {
    ($e:expr) => {
        $e.map_err(|e| Failure::Invalid(e.to_string()))?
    };
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if e.use_stderr() {
                write!(err, "{}", e.render())
            } else {
                write!(out, "{}", e.render())
            };
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(Failure::Parse(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(Failure::Invalid(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
    }
}

fn execute(command: Command, out: &mut dyn Write) -> Result<i32, Failure> {
    let io = |e: std::io::Error| Failure::Invalid(e.to_string());
    match command {
        Command::Enumerate { pairs, list } => {
            let trees = invalid!(enumerate_matched_trees(pairs));
            writeln!(out, "count: {}", trees.len()).map_err(io)?;
            if list {
                for t in &trees {
                    writeln!(out, "{}", t.canonical_code()).map_err(io)?;
                }
            }
            Ok(0)
        }
        Command::Check { file, level } => {
            let tf = parse_file(file)?;
            let report = tf.plumbing.check_admissible(level.into());
            writeln!(out, "level: {}", report.level).map_err(io)?;
            for v in &report.violations {
                writeln!(out, "violation: {v}").map_err(io)?;
            }
            let verdict = if report.passed() { "pass" } else { "fail" };
            writeln!(out, "status: {verdict}").map_err(io)?;
            Ok(if report.passed() { 0 } else { 1 })
        }
        Command::Seifert { file } => {
            let tf = parse_file(file)?;
            write!(out, "{}", seifert_matrix(&tf.plumbing)).map_err(io)?;
            Ok(0)
        }
        Command::Pairing { file, method } => {
            let tf = parse_file(file)?;
            let fp = &tf.plumbing;
            match method {
                Method::Conjugation => write!(out, "{}", pairing_by_conjugation(fp).matrix()).map_err(io)?,
                Method::ClosedForm => write!(out, "{}", pairing_closed_form(fp).matrix()).map_err(io)?,
                Method::Both => {
                    let a = pairing_by_conjugation(fp);
                    let b = pairing_closed_form(fp);
                    write!(out, "{}", a.matrix()).map_err(io)?;
                    if a != b {
                        let n = a.matrix().dim();
                        let basis = a.matrix().basis();
                        for i in 0..n {
                            for j in 0..n {
                                let (x, y) = (a.matrix().get(i, j), b.matrix().get(i, j));
                                if x != y {
                                    writeln!(
                                        out,
                                        "mismatch: ({}, {}) conjugation={x} closed-form={y}",
                                        basis[i], basis[j]
                                    )
                                    .map_err(io)?;
                                }
                            }
                        }
                        return Ok(1);
                    }
                    writeln!(out, "methods agree").map_err(io)?;
                }
            }
            Ok(0)
        }
        Command::Invariants { file } => {
            let tf = parse_file(file)?;
            let fp = &tf.plumbing;
            let delta = invalid!(alexander_polynomial(fp));
            let spin = invalid!(spin_c_support(fp));
            let sides: Vec<String> = spin.sides().iter().map(ToString::to_string).collect();
            writeln!(out, "# basis: {}", fp.tree().basis_labels().join(" ")).map_err(io)?;
            writeln!(out, "alexander: {delta}").map_err(io)?;
            writeln!(out, "determinant: {}", knot_determinant(fp)).map_err(io)?;
            writeln!(out, "signature: {}", knot_signature(fp)).map_err(io)?;
            writeln!(out, "genus: {}", surface_genus(fp)).map_err(io)?;
            writeln!(out, "spin_c_sides: {}", sides.join(" ")).map_err(io)?;
            writeln!(out, "spin_c_volume: {}", spin.volume()).map_err(io)?;
            Ok(0)
        }
        Command::Classify {
            file,
            all_epsilon,
            permissive,
            verbose,
        } => {
            let tf = parse_file(file)?;
            classify(&tf, all_epsilon, permissive, verbose, out).map_err(io)?
        }
        Command::Equivalent { first, second } => {
            let a = parse_file(first)?;
            let b = parse_file(second)?;
            let tree = a.plumbing.tree();
            match invalid!(surfaces_equivalent(&a.plumbing, &b.plumbing)) {
                EquivalenceReport::Equivalent(w) => {
                    writeln!(out, "equivalent: yes").map_err(io)?;
                    writeln!(out, "witness: {}", w.describe(tree)).map_err(io)?;
                }
                EquivalenceReport::Inequivalent(o) => {
                    writeln!(out, "equivalent: no").map_err(io)?;
                    writeln!(out, "obstruction: {}", o.describe(tree)).map_err(io)?;
                }
            }
            Ok(0)
        }
        Command::Chain { pairs, framing, name } => {
            let tree = invalid!(MatchedTree::chain(pairs));
            let f = match framing {
                Framing::Corollary => corollary_framing(&tree),
            };
            let m = tree.edge_count();
            let fp = invalid!(FramedPlumbing::new(tree, f, vec![Sign::Plus; m]));
            write!(out, "{}", serialize(&TreeFile { name, plumbing: fp })).map_err(io)?;
            Ok(0)
        }
        Command::Dot { file } => {
            let tf = parse_file(file)?;
            write!(out, "{}", export_dot(&tf)).map_err(io)?;
            Ok(0)
        }
    }
}

/// `f(w_i) = 2i + 1`, `f(b_i) = -2i` on a chain tree.
pub fn corollary_framing(tree: &MatchedTree) -> Vec<BigInt> {
    tree.vertices()
        .map(|v| {
            let label = tree.label(v);
            let i: i64 = label[1..].parse().expect("chain labels are b<i>/w<i>");
            if label.starts_with('w') {
                BigInt::from(2 * i + 1)
            } else {
                BigInt::from(-2 * i)
            }
        })
        .collect()
}

fn describe_plumbing(signs: &[Sign]) -> String {
    signs.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

fn classify(
    tf: &TreeFile,
    all_epsilon: bool,
    permissive: bool,
    verbose: bool,
    out: &mut dyn Write,
) -> std::io::Result<Result<i32, Failure>> {
    let fp = &tf.plumbing;
    let tree = fp.tree();
    let count = match count_classes_with(tree, fp.framing(), ClassifyOptions { permissive }) {
        Ok(c) => c,
        Err(e) => return Ok(Err(Failure::Invalid(e.to_string()))),
    };
    let m = tree.edge_count();
    let edges: Vec<String> = tree
        .edges()
        .iter()
        .map(|e| format!("{}-{}", tree.label(e.tail), tree.label(e.head)))
        .collect();
    writeln!(out, "# edges: {}", edges.join(" "))?;
    if count.heuristic {
        writeln!(
            out,
            "# heuristic: framing is not admissible; signed permutations searched"
        )?;
    }
    writeln!(out, "labelings: {}", count.labelings)?;
    writeln!(out, "classes: {}", count.classes)?;
    if !all_epsilon {
        let own = fp.plumbing_index();
        let class = count.class_of[own as usize];
        let class_size = count.class_of.iter().filter(|&&c| c == class).count();
        writeln!(out, "labeling: {}", describe_plumbing(fp.plumbing()))?;
        writeln!(out, "index: {own}")?;
        writeln!(out, "equivalent labelings: {class_size}")?;
        return Ok(Ok(0));
    }
    for (i, &k) in count.representatives.iter().enumerate() {
        writeln!(
            out,
            "representative {i}: {}",
            describe_plumbing(&FramedPlumbing::plumbing_from_index(m, k))
        )?;
    }
    if count.heuristic {
        return Ok(Ok(0));
    }
    let reps: Vec<FramedPlumbing> = count
        .representatives
        .iter()
        .map(|&k| {
            fp.with_plumbing(FramedPlumbing::plumbing_from_index(m, k))
                .expect("same edge count")
        })
        .collect();
    let (mut matched, mut unmatched, mut other) = (0usize, 0usize, 0usize);
    for i in 0..reps.len() {
        for j in i + 1..reps.len() {
            let report = match surfaces_equivalent(&reps[i], &reps[j]) {
                Ok(r) => r,
                Err(e) => return Ok(Err(Failure::Invalid(e.to_string()))),
            };
            if let Some(o) = report.obstruction() {
                match o.case {
                    ObstructionCase::MatchedEdge => matched += 1,
                    ObstructionCase::UnmatchedEdge => unmatched += 1,
                    ObstructionCase::Other => other += 1,
                }
                if verbose {
                    writeln!(out, "obstruction {i} vs {j}: {}", o.describe(tree))?;
                }
            }
        }
    }
    writeln!(
        out,
        "obstructions: matched-edge={matched} unmatched-edge={unmatched} other={other}"
    )?;
    Ok(Ok(0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("arbor").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn corollary_framing_on_chain() {
        let tree = MatchedTree::chain(2).unwrap();
        let f: Vec<(String, BigInt)> = tree
            .canonical_order()
            .iter()
            .map(|&v| (tree.label(v).to_string(), corollary_framing(&tree)[v.0].clone()))
            .collect();
        let expected: Vec<(String, BigInt)> = [("w1", 3), ("b1", -2), ("w2", 5), ("b2", -4)]
            .iter()
            .map(|&(l, x)| (l.to_string(), BigInt::from(x)))
            .collect();
        assert_eq!(f, expected);
    }

    #[test]
    fn enumerate_one_pair() {
        assert_eq!(
            run_str(&["enumerate", "--pairs", "1"]),
            (0, "count: 1\n".to_string(), String::new())
        );
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(run_str(&["enumerate"]).0, 2);
        assert_eq!(run_str(&["frobnicate"]).0, 2);
        assert_eq!(run_str(&["pairing", "x.tree", "--method", "guess"]).0, 2);
    }

    #[test]
    fn chain_emits_a_parseable_file() {
        let (code, text, _) = run_str(&["chain", "--pairs", "2"]);
        assert_eq!(code, 0);
        let tf = crate::format::parse(&text).unwrap();
        assert_eq!(tf.name, "chain");
        assert_eq!(serialize(&tf), text);
    }

    #[test]
    fn zero_pairs_is_a_validation_error() {
        let (code, _, err) = run_str(&["chain", "--pairs", "0"]);
        assert_eq!(code, 1);
        assert!(err.starts_with("error:"));
    }
}
