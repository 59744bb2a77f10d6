use std::process::{Command, Output};

fn ppz(args: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ppz"))
        .args(args.split_whitespace())
        .output()
        .expect("binary runs")
}

fn status(args: &str) -> i32 {
    ppz(args).status.code().unwrap()
}

#[test]
fn success_paths_exit_zero() {
    for args in [
        "relations --g 1 --n 2 --r 3",
        "relations --g 2 --n 3 --r 3",
        "relations --g 1 --n 3 --symbolic --a 0,1,0",
        "verify-ac --g 2 --n 0 --r 3",
        "verify-ac --g 3 --n 0 --r 3",
        "pm-table --m-max 0 --r 7",
        "--help",
        "--version",
        "relations --help",
    ] {
        assert_eq!(status(args), 0, "{args}");
    }
}

#[test]
fn usage_errors_exit_one() {
    for args in [
        "",
        "frobnicate",
        "relations --g 1 --n 2",
        "relations --g 1 --n 2 --r 3 --symbolic",
        "relations --g 1 --n 2 --r x",
        "relations --g 1 --n 0 --r 3",
        "relations --g 1 --n 2 --r 3 --a 1",
        "relations --g 2 --n 1 --symbolic",
        "relations --g 1 --n 2 --r 3 --format yaml",
        "verify-ac --g 4 --n 0 --r 3",
        "pm-table --m-max 1 --r 2",
    ] {
        assert_eq!(status(args), 1, "{args}");
    }
}

#[test]
fn degree_gate_exits_two_and_cites_the_degree() {
    let out = ppz("relations --g 4 --n 0 --r 3");
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("D = 1"), "{err}");
    assert!(out.stdout.is_empty());
    assert_eq!(status("relations --g 1 --n 3 --r 3 --a 1,1,1"), 2);
}

#[test]
fn pm_table_prints_exact_fractions() {
    let out = ppz("pm-table --m-max 1 --r 3");
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().collect::<Vec<_>>(), ["m=0: 1 1", "m=1: -5/24 7/24"]);
}

#[test]
fn verify_reports_equal_rank() {
    let out = ppz("verify-ac --g 1 --n 4 --r 3");
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("rank 5"));
    assert_eq!(text.lines().last(), Some("EQUAL"));
}

#[test]
fn selftest_json_lists_every_criterion() {
    let out = ppz("selftest --json");
    let record: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let verdicts = record["verdicts"].as_array().unwrap();
    assert_eq!(verdicts.len(), 11);
    let all = verdicts.iter().all(|v| v["passed"] == true);
    assert_eq!(out.status.code(), Some(if all { 0 } else { 3 }));
}
