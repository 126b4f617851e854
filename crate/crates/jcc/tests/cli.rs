mod common;

use common::*;
use jcc::report::parse_report;

fn path(rel: &str) -> String {
    corpus(rel).to_str().unwrap().to_string()
}

#[test]
fn check_nat_prints_each_outcome() {
    let (code, out, err) = cli(&["check", &path("nat.cc")]);
    assert_eq!(code, 0, "{}", err);
    assert!(err.is_empty());
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(
        lines,
        ["nat, O, S defined", "two defined", "plus defined", "equal", "S (S (S O))", "plus two : nat -> nat"]
    );
}

#[test]
fn rejection_exits_one_with_the_rule() {
    let (code, _, err) = cli(&["check", &path("bad_negative.cc")]);
    assert_eq!(code, 1);
    assert!(err.contains("(ind-wf) positivity"), "{}", err);
    // `file:line:col: error [rule]: message`
    let line = err.lines().next().unwrap();
    assert!(line.contains("bad_negative.cc:4:1: error [(ind-wf) positivity]"), "{}", line);
}

#[test]
fn usage_and_io_errors_exit_two() {
    assert_eq!(cli(&["check", "/nonexistent/file.cc"]).0, 2);
    assert_eq!(cli(&["frobnicate"]).0, 2);
    assert_eq!(cli(&["norm", &path("nat.cc")]).0, 2);
    assert_eq!(cli(&["check", &path("nat.cc"), "--depth", "many"]).0, 2);
    assert_eq!(cli(&["--help"]).0, 0);
}

#[test]
fn norm_prints_the_normal_form() {
    let (code, out, _) = cli(&["norm", &path("tree_forest.cc"), "--term", "pair"]);
    assert_eq!(code, 0);
    assert_eq!(
        out.trim(),
        "node nat (S O) (consf nat (node nat O (emptyf nat)) (consf nat (node nat O (emptyf nat)) (emptyf nat)))"
    );
    let (code, _, err) = cli(&["norm", &path("nat.cc"), "--term", "three"]);
    assert_eq!(code, 1);
    assert!(err.contains("three"));
}

#[test]
fn model_of_a_numeral() {
    let (code, out, err) = cli(&["model", &path("nat.cc"), "--term", "two", "--type", "nat", "--depth", "5"]);
    assert_eq!(code, 0, "{}", err);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "⟨2,⟨2,⟨1⟩⟩⟩");
    assert_eq!(lines[1], "member: yes");
    assert!(lines[2].starts_with("JUDGMENT two: yes (depth=5, samples="), "{}", lines[2]);

    // A type the definition does not have is rejected before the model runs.
    let (code, _, err) = cli(&["model", &path("nat.cc"), "--term", "two", "--type", "nat -> nat"]);
    assert_eq!(code, 1);
    assert!(err.contains("(conv)"), "{}", err);
}

#[test]
fn model_of_a_whole_file_with_report() {
    let report = std::path::Path::new(env!("CARGO_TARGET_TMPDIR")).join("bool_report.txt");
    let (code, out, err) = cli(&["model", &path("bool.cc"), "--depth", "8", "--report", report.to_str().unwrap()]);
    assert_eq!(code, 0, "{}", err);
    let judgments: Vec<&str> = out.lines().filter(|l| l.starts_with("JUDGMENT ")).collect();
    assert_eq!(judgments.len(), 4);
    assert!(judgments.iter().all(|l| l.contains(": yes (depth=8")), "{}", out);

    let kv = parse_report(&std::fs::read_to_string(&report).unwrap());
    let get = |k: &str| kv.iter().find(|(a, _)| a == k).map(|(_, b)| b.as_str());
    assert_eq!(get("depth"), Some("8"));
    assert_eq!(get("rank"), Some("2"));
    assert_eq!(get("judgments"), Some("4"));
    assert_eq!(get("yes"), Some("4"));
    assert_eq!(get("no"), Some("0"));
    assert_eq!(get("judgment.negb"), Some("yes"));
}

#[test]
fn model_items_use_their_own_depth() {
    let (code, out, _) = cli(&["model", &path("nat.cc"), "--depth", "8"]);
    assert_eq!(code, 0);
    assert!(out.lines().any(|l| l.starts_with("JUDGMENT two: yes (depth=5")), "{}", out);
    assert!(out.lines().any(|l| l.starts_with("JUDGMENT two: yes (depth=8")), "{}", out);
    assert!(!out.contains(": no "));
}
