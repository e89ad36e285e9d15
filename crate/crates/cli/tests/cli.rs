use std::path::PathBuf;
use std::process::Command;

use conic_cubics::report::SolveDocument;
use conic_cubics_cli::{run, EXIT_CLASSIFY, EXIT_OK, EXIT_USAGE, EXIT_VERIFY, SEED_ENV};

fn cli(args: &[&str]) -> conic_cubics_cli::Outcome {
    run(std::iter::once("conic-cubics").chain(args.iter().copied()))
}

fn roots(stdout: &str) -> Vec<f64> {
    let doc = SolveDocument::from_json(stdout).unwrap();
    doc.report().expanded()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("conic-cubics-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn classify_examples() {
    let out = cli(&["classify", "1", "0", "2", "-5"]);
    assert_eq!(out.code, EXIT_OK);
    assert_eq!(out.stdout, "type 13 (x³+bx=c), b=2, c=5, pair pc\n");

    let out = cli(&["classify", "1", "0", "0", "-8"]);
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stdout.starts_with("type 3"), "{}", out.stdout);
    assert!(out.stdout.ends_with(", c=8, pair pp\n"), "{}", out.stdout);

    let out = cli(&["classify", "0", "1", "1", "1"]);
    assert_eq!(out.code, EXIT_CLASSIFY);
    assert!(out.stdout.is_empty());
    assert!(out.stderr.starts_with("error:"));
}

#[test]
fn classify_json() {
    let out = cli(&["classify", "2", "0", "4", "-10", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["type_id"], 13);
    assert_eq!(v["b"], 2.0);
    assert_eq!(v["c"], 5.0);
    assert_eq!(v["pair_code"], "pc");
}

#[test]
fn solve_examples() {
    let out = cli(&[
        "solve", "1", "0", "1", "-10", "--method", "khayyam", "--format", "json",
    ]);
    assert_eq!(out.code, EXIT_OK);
    let r = roots(&out.stdout);
    assert_eq!(r.len(), 1);
    assert!((r[0] - 2.0).abs() < 1e-9);

    let out = cli(&[
        "solve",
        "1",
        "0",
        "-7",
        "6",
        "--method",
        "descartes",
        "--format",
        "json",
    ]);
    let r = roots(&out.stdout);
    assert_eq!(r.len(), 3);
    for (g, w) in r.iter().zip([-3.0, 1.0, 2.0]) {
        assert!((g - w).abs() < 1e-9, "{r:?}");
    }

    let out = cli(&[
        "solve", "1", "0", "-1", "1", "--method", "khayyam", "--format", "json",
    ]);
    let doc = SolveDocument::from_json(&out.stdout).unwrap();
    assert!(doc.impossible);
    assert!(doc.roots.is_empty());
    assert_eq!(doc.type_id, Some(14));
}

#[test]
fn solve_text_output() {
    let out = cli(&["solve", "1", "0", "-3", "2", "--method", "oracle"]);
    assert_eq!(out.code, EXIT_OK);
    let lines: Vec<&str> = out.stdout.lines().collect();
    assert_eq!(lines[0], "method oracle, type 14");
    assert!(lines[1].starts_with("root -2"), "{lines:?}");
    assert!(lines[2].starts_with("root 1") && lines[2].ends_with("(multiplicity 2)"));
    assert!(lines[3].starts_with("residual_max "));

    let out = cli(&["solve", "1", "0", "-1", "1"]);
    assert!(out.stdout.contains("no positive root (impossible)"));
}

#[test]
fn every_pair_solves_the_same() {
    for pair in ["12", "13", "23"] {
        let out = cli(&[
            "solve", "1", "-6", "11", "-6", "--pair", pair, "--format", "json",
        ]);
        let r = roots(&out.stdout);
        assert_eq!(r.len(), 3, "pair {pair}");
        for (g, w) in r.iter().zip([1.0, 2.0, 3.0]) {
            assert!((g - w).abs() < 1e-9, "pair {pair}: {r:?}");
        }
    }
    assert_eq!(
        cli(&["solve", "1", "0", "1", "-10", "--pair", "21"]).code,
        EXIT_USAGE
    );
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(cli(&[]).code, EXIT_USAGE);
    assert_eq!(cli(&["classify", "1", "2", "3"]).code, EXIT_USAGE);
    assert_eq!(cli(&["classify", "1", "2", "x", "4"]).code, EXIT_USAGE);
    assert_eq!(
        cli(&["solve", "1", "0", "1", "-10", "--tol", "-1"]).code,
        EXIT_USAGE
    );
    assert_eq!(cli(&["figure", "1", "0", "1", "-10"]).code, EXIT_USAGE);
    assert_eq!(cli(&["--help"]).code, EXIT_OK);
}

#[test]
fn table_matches_catalog() {
    let out = cli(&["table", "--format", "json"]);
    let rows: Vec<serde_json::Value> = serde_json::from_str(&out.stdout).unwrap();
    let codes: Vec<(u64, String)> = rows
        .iter()
        .map(|r| {
            (
                r["type_id"].as_u64().unwrap(),
                r["pair_code"].as_str().unwrap().to_string(),
            )
        })
        .collect();
    assert_eq!(codes.len(), 14);
    assert!(codes.contains(&(20, "hh".into())));
    assert!(codes.contains(&(19, "ch".into())));
    assert!(codes.contains(&(3, "pp".into())));
    assert_eq!(cli(&["table"]).stdout.lines().count(), 15);
}

#[test]
fn verify_reports_every_type() {
    let out = cli(&["verify", "--n", "1", "--seed", "7"]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stdout);
    let rows = out
        .stdout
        .lines()
        .filter(|l| l.trim_start().starts_with(|c: char| c.is_ascii_digit()))
        .count();
    assert_eq!(rows, 14);
    assert!(out.stdout.ends_with("PASS\n"));
}

#[test]
fn verify_full_run_passes_and_is_repeatable() {
    let a = cli(&["verify", "--n", "100", "--seed", "42"]);
    assert_eq!(a.code, EXIT_OK, "{}", a.stdout);
    let b = cli(&["verify", "--n", "100", "--seed", "42"]);
    assert_eq!(a.stdout, b.stdout);
    let json = cli(&["verify", "--n", "10", "--seed", "42", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&json.stdout).unwrap();
    assert_eq!(v["rows"].as_array().unwrap().len(), 14);
}

#[test]
fn injected_fault_fails_verification() {
    let out = cli(&["verify", "--n", "2", "--inject-fault"]);
    assert_eq!(out.code, EXIT_VERIFY);
    assert!(out.stdout.ends_with("FAIL\n"));
}

#[test]
fn binary_reads_seed_from_environment() {
    let bin = env!("CARGO_BIN_EXE_conic-cubics");
    let by_env = Command::new(bin)
        .args(["verify", "--n", "3"])
        .env(SEED_ENV, "19")
        .output()
        .unwrap();
    let by_flag = Command::new(bin)
        .args(["verify", "--n", "3", "--seed", "19"])
        .env_remove(SEED_ENV)
        .output()
        .unwrap();
    assert_eq!(by_env.status.code(), Some(0));
    assert_eq!(by_env.stdout, by_flag.stdout);
    assert!(String::from_utf8_lossy(&by_env.stdout).contains("seed=19"));
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_conic-cubics");
    let code = |args: &[&str]| Command::new(bin).args(args).output().unwrap().status.code();
    assert_eq!(code(&["classify", "1", "0", "2", "-5"]), Some(0));
    assert_eq!(code(&["classify", "0", "1", "1", "1"]), Some(2));
    assert_eq!(code(&["verify", "--n", "1", "--inject-fault"]), Some(3));
    assert_eq!(code(&["figure", "1", "0", "1", "-10"]), Some(1));
}

#[test]
fn figures_are_written() {
    let path = scratch("khayyam.svg");
    let out = cli(&[
        "figure",
        "1",
        "0",
        "1",
        "-10",
        "--method",
        "khayyam",
        "-o",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    let svg = std::fs::read_to_string(&path).unwrap();
    assert!(svg.contains(r#"data-conic="parabola""#));
    assert!(svg.contains(r#"data-conic="circle""#));
    assert!(svg.contains(r#"<text class="label""#));

    let path = scratch("descartes.svg");
    let out = cli(&[
        "figure",
        "1",
        "0",
        "-3",
        "-2",
        "--method",
        "descartes",
        "-o",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    let svg = std::fs::read_to_string(&path).unwrap();
    assert!(svg.contains(r#"data-conic="parabola""#));
    assert!(svg.contains(r#"data-conic="circle""#));

    let out = cli(&[
        "figure",
        "0",
        "1",
        "1",
        "1",
        "-o",
        scratch("bad.svg").to_str().unwrap(),
    ]);
    assert_eq!(out.code, EXIT_CLASSIFY);
}
