//! End-to-end runs of the `kentropy` binary: golden reports, exit codes and
//! determinism. Set `UPDATE_GOLDENS=1` to rewrite the golden files.

use std::path::Path;
use std::process::{Command, Output};

const BIN: &str = env!("CARGO_BIN_EXE_kentropy");
const ROOT: &str = env!("CARGO_MANIFEST_DIR");

fn kentropy(args: &[&str]) -> Output {
    Command::new(BIN)
        .current_dir(ROOT)
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 stdout")
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn check_golden(name: &str, args: &[&str], code: i32) {
    let out = kentropy(args);
    assert_eq!(out.status.code(), Some(code), "{name}: {}", stderr(&out));
    let path = Path::new(ROOT).join("tests/golden").join(name);
    let got = stdout(&out);
    if std::env::var_os("UPDATE_GOLDENS").is_some() {
        std::fs::write(&path, &got).unwrap();
        return;
    }
    let want = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert_eq!(got, want, "{name} differs from its golden file");
}

#[test]
fn golden_reports() {
    let cases: &[(&str, &[&str], i32)] = &[
        (
            "entropy_diagonal_2_3_5.tsv",
            &[
                "entropy",
                "--spec",
                "tests/data/diagonal_2_3_5.spec",
                "--max-iter",
                "6",
            ],
            0,
        ),
        (
            "entropy_frobenius_3_xy.tsv",
            &["entropy", "--spec", "tests/data/frobenius_3_xy.spec"],
            0,
        ),
        (
            "entropy_ideal_log2.tsv",
            &[
                "entropy",
                "--spec",
                "tests/data/diagonal_2_3.spec",
                "--max-iter",
                "5",
                "--log-base",
                "2",
            ],
            0,
        ),
        (
            "entropy_swap.json",
            &[
                "entropy",
                "--spec",
                "tests/data/swap_3_2.spec",
                "--max-iter",
                "4",
                "--format",
                "report",
            ],
            0,
        ),
        (
            "delta_diagonal_2_3.tsv",
            &[
                "delta",
                "--spec",
                "tests/data/diagonal_2_3.spec",
                "--t",
                "-1,0,1",
            ],
            0,
        ),
        (
            "delta_wide_generator.tsv",
            &[
                "delta",
                "--spec",
                "tests/data/diagonal_2_3_wide.spec",
                "--t=-1,0,1",
            ],
            0,
        ),
        (
            "delta_identity.tsv",
            &[
                "delta",
                "--spec",
                "tests/data/identity.spec",
                "--t",
                "-1,1",
                "--max-iter",
                "4",
            ],
            0,
        ),
        (
            "delta_lower_only.tsv",
            &[
                "delta",
                "--spec",
                "tests/data/frobenius_3_xy.spec",
                "--max-iter",
                "5",
            ],
            0,
        ),
        (
            "koszul_regular.tsv",
            &[
                "koszul",
                "--spec",
                "tests/data/frobenius_2.spec",
                "--oracle",
            ],
            0,
        ),
        (
            "koszul_pullback.tsv",
            &[
                "koszul",
                "--spec",
                "tests/data/frobenius_2_xy.spec",
                "--pullback-iter",
                "2",
                "--oracle",
            ],
            0,
        ),
        (
            "verify_diagonal.tsv",
            &[
                "verify",
                "diagonal",
                "--spec",
                "tests/data/diagonal_2_3_5.spec",
            ],
            0,
        ),
        (
            "verify_monomial_matrix.tsv",
            &[
                "verify",
                "monomial-matrix",
                "--spec",
                "tests/data/swap_3_2.spec",
                "--max-iter",
                "6",
            ],
            0,
        ),
        (
            "verify_frobenius_regular.tsv",
            &[
                "verify",
                "frobenius",
                "--spec",
                "tests/data/frobenius_2.spec",
            ],
            0,
        ),
        (
            "verify_frobenius_xy.tsv",
            &[
                "verify",
                "frobenius",
                "--spec",
                "tests/data/frobenius_3_xy.spec",
            ],
            0,
        ),
        (
            "verify_ideal_independence.tsv",
            &[
                "verify",
                "ideal-independence",
                "--spec",
                "tests/data/diagonal_2_3.spec",
            ],
            0,
        ),
        (
            "verify_sandwich.tsv",
            &[
                "verify",
                "sandwich",
                "--spec",
                "tests/data/diagonal_2_3_wide.spec",
                "--t",
                "-1,0,1",
            ],
            0,
        ),
        (
            "verify_transfer.tsv",
            &[
                "verify",
                "transfer",
                "--spec",
                "tests/data/frobenius_square.square",
            ],
            0,
        ),
        (
            "transfer_truncated.tsv",
            &["transfer", "--spec", "tests/data/truncated_square.square"],
            0,
        ),
        (
            "verify_transfer_truncated.tsv",
            &[
                "verify",
                "transfer",
                "--spec",
                "tests/data/truncated_square.square",
            ],
            4,
        ),
    ];
    for (name, args, code) in cases {
        check_golden(name, args, *code);
    }
}

#[test]
fn parse_errors_exit_2_and_name_the_field() {
    let out = kentropy(&["entropy", "--spec", "tests/data/zero_column.spec"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("line 3: map column 2 is zero (not a local endomorphism)"));
    assert!(out.stdout.is_empty());

    let out = kentropy(&["entropy", "--spec", "tests/data/no_such_file.spec"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("cannot read"));

    let out = kentropy(&["koszul", "--spec", "tests/data/diagonal_2_3_5.spec"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("missing field `sequence`"));

    let out = kentropy(&[
        "entropy",
        "--spec",
        "tests/data/diagonal_2_3.spec",
        "--max-iter",
        "0",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let out = kentropy(&[
        "verify",
        "everything",
        "--spec",
        "tests/data/diagonal_2_3.spec",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn hypothesis_failures_exit_3() {
    let cases: &[(&[&str], &str)] = &[
        (
            &["entropy", "--spec", "tests/data/not_finite.spec"],
            "not of finite length",
        ),
        (
            &["koszul", "--spec", "tests/data/short_sequence.spec"],
            "not m-primary",
        ),
        (
            &[
                "verify",
                "transfer",
                "--spec",
                "tests/data/broken_square.square",
            ],
            "square does not commute on source variable 2",
        ),
        (
            &["transfer", "--spec", "tests/data/broken_square.square"],
            "square does not commute",
        ),
        (
            &[
                "verify",
                "sandwich",
                "--spec",
                "tests/data/frobenius_3_xy.spec",
            ],
            "requires a regular ring",
        ),
        (
            &[
                "verify",
                "diagonal",
                "--spec",
                "tests/data/wrong_prediction.spec",
            ],
            "diagonal map on a regular ring",
        ),
    ];
    for (args, needle) in cases {
        let out = kentropy(args);
        assert_eq!(out.status.code(), Some(3), "{args:?}: {}", stderr(&out));
        assert!(stderr(&out).contains(needle), "{args:?}: {}", stderr(&out));
    }
}

#[test]
fn failed_verdicts_exit_4_after_printing_the_report() {
    let out = kentropy(&[
        "verify",
        "transfer",
        "--spec",
        "tests/data/truncated_square.square",
    ]);
    assert_eq!(out.status.code(), Some(4));
    let text = stdout(&out);
    assert!(text.contains("# verdict: square commutes: PASS"));
    assert!(text.contains("# verdict: local entropies agree within 1e-06: FAIL"));
    assert!(text.contains("# conclusion: one-sided"));
}

#[test]
fn identical_invocations_are_byte_identical() {
    let args = [
        "delta",
        "--spec",
        "tests/data/diagonal_2_3_wide.spec",
        "--t",
        "-1,0,1",
        "--format",
        "report",
    ];
    let first = kentropy(&args);
    let second = kentropy(&args);
    assert_eq!(first.stdout, second.stdout);
    let serial = Command::new(BIN)
        .current_dir(ROOT)
        .env("RAYON_NUM_THREADS", "1")
        .args(args)
        .output()
        .unwrap();
    assert_eq!(first.stdout, serial.stdout);
    assert!(stderr(&first).contains("wall-time:"));
}

#[test]
fn report_format_is_one_json_object() {
    let out = kentropy(&[
        "verify",
        "frobenius",
        "--spec",
        "tests/data/frobenius_2.spec",
        "--format",
        "report",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["pass"], serde_json::json!(true));
    assert_eq!(v["tables"][0]["rows"].as_array().unwrap().len(), 8);
    assert_eq!(v["input_sha256"].as_str().unwrap().len(), 64);
}

#[test]
fn log_base_rescales_display_only() {
    let e = stdout(&kentropy(&[
        "entropy",
        "--spec",
        "tests/data/frobenius_2.spec",
        "--max-iter",
        "3",
    ]));
    let two = stdout(&kentropy(&[
        "entropy",
        "--spec",
        "tests/data/frobenius_2.spec",
        "--max-iter",
        "3",
        "--log-base",
        "2",
    ]));
    assert!(e.contains("# estimate: 1.38629436112\n"));
    assert!(two.contains("# estimate: 2\n"));
    assert!(two.contains("3\t64\t6\t2\n"));
}
