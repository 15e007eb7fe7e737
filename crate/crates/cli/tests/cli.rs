use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use hskern_core::fixtures::EXAMPLE1_TEXT;

fn hskern(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hskern"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn example_file(dir: &Path) -> String {
    let path = dir.join("example.hs");
    fs::write(&path, EXAMPLE1_TEXT).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn kernelize_example_reports_one_sunflower() {
    let dir = tempfile::tempdir().unwrap();
    let input = example_file(dir.path());
    let explain = dir.path().join("explain.txt");
    let out = hskern(&[
        "kernelize",
        "--k",
        "2",
        "--explain",
        explain.to_str().unwrap(),
        &input,
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("edges_in=5 edges_out=5"), "{text}");
    assert!(text.contains("p hs 9 5"), "{text}");
    assert_eq!(
        fs::read_to_string(explain).unwrap(),
        "core: 3 4 petals: 2 3 4\n"
    );
}

#[test]
fn solve_and_minimal_solutions() {
    let dir = tempfile::tempdir().unwrap();
    let input = example_file(dir.path());
    assert_eq!(
        stdout(&hskern(&["solve", "--k", "1", &input])),
        "infeasible\n"
    );
    assert!(stdout(&hskern(&["solve", "--k", "2", &input])).starts_with("feasible\n"));
    assert_eq!(
        stdout(&hskern(&["minimal-solutions", "--k", "2", &input])),
        "1 3\n2 3\n2 4\n3 5\n"
    );
}

#[test]
fn bounds_and_weakly_related() {
    let dir = tempfile::tempdir().unwrap();
    let input = example_file(dir.path());
    assert_eq!(stdout(&hskern(&["bounds", &input])), "lower 2\nupper 2\n");
    assert_eq!(stdout(&hskern(&["weakly-related", &input])), "0\n1\n2\n");
}

#[test]
fn verify_passes_on_example() {
    let dir = tempfile::tempdir().unwrap();
    let input = example_file(dir.path());
    let out = hskern(&["verify", "--k", "2", &input]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(!stdout(&out).contains("FAIL"));
}

#[test]
fn generate_reads_back() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.hs");
    let out = hskern(&["generate", "golomb", "--n", "10", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let out = hskern(&["bounds", path.to_str().unwrap()]);
    assert_eq!(stdout(&out), "lower 3\nupper 7\n");
    let a = stdout(&hskern(&[
        "generate",
        "random",
        "--n",
        "12",
        "--density",
        "sparse",
        "--seed",
        "4",
    ]));
    let b = stdout(&hskern(&[
        "generate",
        "random",
        "--n",
        "12",
        "--density",
        "sparse",
        "--seed",
        "4",
    ]));
    assert_eq!(a, b);
    assert!(a.contains("p hs 12 144"));
}

#[test]
fn bench_writes_csv() {
    let out = hskern(&["bench", "--from", "10", "--to", "20", "--backends", "btree"]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 3);
    assert!(text
        .lines()
        .nth(2)
        .unwrap()
        .starts_with("golomb-0020,20,715,4,"));
}

#[test]
fn errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("missing.hs");
    assert_eq!(
        hskern(&["bounds", missing.to_str().unwrap()]).status.code(),
        Some(2)
    );
    let bad = dir.path().join("bad.hs");
    fs::write(&bad, "p hs 2 1\n1 5\n").unwrap();
    let out = hskern(&["solve", "--k", "1", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));
    assert_eq!(
        hskern(&["kernelize", "--strategy", "medium", "-"])
            .status
            .code(),
        Some(2)
    );
    let input = example_file(dir.path());
    let out = hskern(&["kernelize", "--max-cardinality", "2", &input]);
    assert_eq!(out.status.code(), Some(2));
}
