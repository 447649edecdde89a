mod common;

use std::path::PathBuf;
use std::process::{Command, Output};

use arbor::format::{serialize, TreeFile};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::*;

fn arbor(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_arbor"))
        .args(args)
        .output()
        .expect("spawn arbor")
}

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "fixtures", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn enumerate_counts() {
    let o = arbor(&["enumerate", "--pairs", "1"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "count: 1\n");
    let o = arbor(&["enumerate", "--pairs", "3", "--list"]);
    let text = stdout(&o);
    assert_eq!(text.lines().next(), Some("count: 3"));
    assert_eq!(text.lines().count(), 4);
}

#[test]
fn classify_chain_from_generated_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("chain.tree");
    let o = arbor(&["chain", "--pairs", "2", "--framing", "corollary"]);
    assert!(o.status.success());
    std::fs::write(&path, o.stdout).unwrap();
    let path = path.to_str().unwrap();

    let o = arbor(&["classify", path, "--all-epsilon"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.contains("\nclasses: 8\n"), "{text}");
    assert!(text.contains("labelings: 8"));
    assert_eq!(text.matches("representative ").count(), 8);
    assert!(text.contains("obstructions: "));

    let o = arbor(&["classify", path]);
    let text = stdout(&o);
    assert!(text.contains("classes: 8"));
    assert!(text.contains("equivalent labelings: 1"));
}

#[test]
fn seifert_and_invariants_of_t1() {
    let o = arbor(&["seifert", &fixture("t1_plus.tree")]);
    assert_eq!(stdout(&o), "# basis: w b\n3 0\n1 -2\n");
    let o = arbor(&["invariants", &fixture("t1_plus.tree")]);
    let text = stdout(&o);
    for line in [
        "alexander: -6 13 -6",
        "determinant: 25",
        "signature: 0",
        "genus: 1",
        "spin_c_sides: 3 2",
        "spin_c_volume: 6",
    ] {
        assert!(text.contains(line), "missing {line:?} in {text}");
    }
}

#[test]
fn equivalent_reports_the_obstruction() {
    let o = arbor(&["equivalent", &fixture("t1_plus.tree"), &fixture("t1_minus.tree")]);
    assert!(o.status.success());
    assert_eq!(
        stdout(&o),
        "equivalent: no\nobstruction: (c_b, c_w) 0 vs 1 [matched-edge]\n"
    );
    let o = arbor(&["equivalent", &fixture("t1_plus.tree"), &fixture("t1_plus.tree")]);
    assert_eq!(stdout(&o), "equivalent: yes\nwitness: w=+1 b=+1\n");
    let o = arbor(&["equivalent", &fixture("t1_plus.tree"), &fixture("chain2.tree")]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn check_levels_and_exit_codes() {
    let o = arbor(&["check", &fixture("chain2.tree")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("status: pass\n"));
    let o = arbor(&["check", &fixture("repeated.tree")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("violation: "));
    let o = arbor(&["check", &fixture("repeated.tree"), "--level", "basic"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn parse_errors_exit_two_and_name_the_line() {
    let o = arbor(&["seifert", &fixture("missing_eps.tree")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 4"), "{}", stderr(&o));
    let o = arbor(&["seifert", "/nonexistent/file.tree"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn classify_refuses_repeated_magnitudes_unless_permissive() {
    let o = arbor(&["classify", &fixture("repeated.tree"), "--all-epsilon"]);
    assert_eq!(o.status.code(), Some(1));
    let o = arbor(&["classify", &fixture("repeated.tree"), "--all-epsilon", "--permissive"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("# heuristic"));
}

#[test]
fn dot_of_chain() {
    let o = arbor(&["dot", &fixture("chain2.tree")]);
    let text = stdout(&o);
    assert_eq!(text.matches(" -> ").count(), 3);
    assert_eq!(text.matches("black:invis:black").count(), 2);
    assert_eq!(text.matches("style=filled").count(), 2);
    assert_eq!(text, stdout(&arbor(&["dot", &fixture("chain2.tree")])));
}

#[test]
fn pairing_methods_agree_on_random_fixtures() {
    let dir = tempfile::tempdir().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for i in 0..200 {
        let n = 1 + i % 6;
        let tree = random_matched_tree(&mut rng, n);
        let framing = random_framing(&mut rng, &tree);
        let plumbing = random_plumbing(&mut rng, &tree, framing);
        let path = dir.path().join(format!("r{i}.tree"));
        let file = TreeFile {
            name: format!("r{i}"),
            plumbing,
        };
        std::fs::write(&path, serialize(&file)).unwrap();
        let o = arbor(&["pairing", path.to_str().unwrap(), "--method", "both"]);
        assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
        assert!(stdout(&o).ends_with("methods agree\n"));
    }
}
