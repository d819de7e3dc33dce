use std::path::PathBuf;
use std::process::{Command, Output};

use randteam::report::{parse_json, Status};

fn randteam(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_randteam"))
        .args(args)
        .env_remove("RANDTEAM_SEED")
        .output()
        .unwrap()
}

fn config(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "configs", name]
        .iter()
        .collect();
    p.to_str().unwrap().to_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn reproductions_succeed_with_ledgered_discrepancies() {
    for target in ["table1", "table3", "table4", "security"] {
        let o = randteam(&["--check", "reproduce", target]);
        assert_eq!(
            code(&o),
            0,
            "{target}: {}",
            String::from_utf8_lossy(&o.stderr)
        );
    }
}

#[test]
fn unledgered_mismatches_exit_with_three_under_check() {
    assert_eq!(
        code(&randteam(&[
            "--check",
            "reproduce",
            "zs",
            "--case",
            "2",
            "--rand",
            "none"
        ])),
        3
    );
    assert_eq!(
        code(&randteam(&[
            "reproduce",
            "zs",
            "--case",
            "2",
            "--rand",
            "none"
        ])),
        0
    );
    assert_eq!(
        code(&randteam(&[
            "--check",
            "reproduce",
            "zs",
            "--case",
            "1",
            "--rand",
            "none"
        ])),
        0
    );
    assert_eq!(
        code(&randteam(&[
            "--check",
            "--mode",
            "paper-faithful",
            "reproduce",
            "table1"
        ])),
        3
    );
}

#[test]
fn invalid_input_exits_with_one() {
    assert_eq!(code(&randteam(&["reproduce", "table9"])), 1);
    assert_eq!(
        code(&randteam(&[
            "solve",
            "--config",
            "/nonexistent/config.json"
        ])),
        1
    );
    assert_eq!(code(&randteam(&["reproduce", "table3", "--p", "3/2"])), 1);
    assert_eq!(
        code(&randteam(&[
            "--mode",
            "paper-faithful",
            "reproduce",
            "table3"
        ])),
        1
    );

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(
        &bad,
        r#"{"kind": "lqg-team", "b": [[1]], "s": [[1]], "sigma": [[1]], "bogus": 1}"#,
    )
    .unwrap();
    assert_eq!(
        code(&randteam(&["solve", "--config", bad.to_str().unwrap()])),
        1
    );
    std::fs::write(&bad, "not json").unwrap();
    assert_eq!(
        code(&randteam(&["solve", "--config", bad.to_str().unwrap()])),
        1
    );
}

#[test]
fn help_exits_with_zero() {
    assert_eq!(code(&randteam(&["--help"])), 0);
}

#[test]
fn same_seed_gives_byte_identical_output() {
    for format in ["csv", "json"] {
        let args = [
            "--seed",
            "7",
            "--samples",
            "20000",
            "--format",
            format,
            "mc-check",
            "--config",
            &config("mc_two_dm.json"),
        ];
        let a = randteam(&args);
        let b = randteam(&args);
        assert_eq!(code(&a), 0, "{}", String::from_utf8_lossy(&a.stderr));
        assert_eq!(a.stdout, b.stdout);
    }
}

#[test]
fn seed_falls_back_to_the_environment() {
    let args = [
        "--samples",
        "20000",
        "--format",
        "csv",
        "mc-check",
        "--config",
        &config("mc_two_dm.json"),
    ];
    let via_env = Command::new(env!("CARGO_BIN_EXE_randteam"))
        .args(args)
        .env("RANDTEAM_SEED", "11")
        .output()
        .unwrap();
    let mut flagged = vec!["--seed", "11"];
    flagged.extend(args);
    assert_eq!(via_env.stdout, randteam(&flagged).stdout);
    assert_ne!(via_env.stdout, randteam(&args).stdout);
}

#[test]
fn json_output_round_trips() {
    let o = randteam(&["--format", "json", "reproduce", "table3"]);
    assert_eq!(code(&o), 0);
    let report = parse_json(std::str::from_utf8(&o.stdout).unwrap()).unwrap();
    assert_eq!(report.records.len(), 64);
    assert_eq!(
        report
            .records
            .iter()
            .filter(|r| r.status == Status::KnownDiscrepancy)
            .count(),
        31
    );
    assert!(!report.has_mismatch());
}

#[test]
fn csv_output_has_one_row_per_record() {
    let o = randteam(&["--format", "csv", "reproduce", "security"]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some(randteam::report::CSV_HEADER.join(",").as_str())
    );
    assert!(lines.all(|l| l.starts_with("security/")));
}

#[test]
fn bundled_configs_solve() {
    for name in [
        "binary_chain.json",
        "two_dm_mixing.json",
        "zero_sum_mole.json",
    ] {
        let o = randteam(&["--format", "json", "solve", "--config", &config(name)]);
        assert_eq!(
            code(&o),
            0,
            "{name}: {}",
            String::from_utf8_lossy(&o.stderr)
        );
        assert!(!parse_json(std::str::from_utf8(&o.stdout).unwrap())
            .unwrap()
            .records
            .is_empty());
    }
}
