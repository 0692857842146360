//! End-to-end runs of the `levalg` binary.
//!
//! Golden files live in `tests/golden`; set `LEVALG_BLESS=1` to rewrite them.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use levalg::betti::BettiTable;
use levalg::reference;

fn levalg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_levalg"))
        .args(args)
        .env_remove("LEVALG_SEED")
        .env_remove("LEVALG_PRIME")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

fn check_golden(name: &str, args: &[&str]) -> serde_json::Value {
    let o = levalg(args);
    assert!(o.status.success(), "{args:?}: {}", stderr(&o));
    let path = golden_dir().join(name);
    if std::env::var_os("LEVALG_BLESS").is_some() {
        std::fs::write(&path, &o.stdout).unwrap();
    }
    let want = std::fs::read_to_string(&path).unwrap();
    assert_eq!(stdout(&o), want, "{name} differs from golden output");
    serde_json::from_str(&want).unwrap()
}

#[test]
fn golden_betti_tables_match_reference() {
    for (w, expected) in [
        ("H1_A1", reference::h1_beta1()),
        ("H1_A2", reference::h1_beta2()),
        ("H1_A3", reference::h1_beta3()),
    ] {
        let v = check_golden(
            &format!("betti_{w}.json"),
            &["betti", "--witness", w, "--format", "json"],
        );
        assert_eq!(BettiTable::from_json(&v["betti"]).unwrap(), expected, "{w}");
        assert_eq!(v["H"], serde_json::json!([1, 3, 4, 4]));
    }
    let v = check_golden(
        "betti_H2_C2_seed7.json",
        &[
            "betti",
            "--witness",
            "H2_C2",
            "--seed",
            "7",
            "--format",
            "json",
        ],
    );
    assert_eq!(
        BettiTable::from_json(&v["betti"]).unwrap(),
        reference::h2_beta2()
    );
}

#[test]
fn golden_series() {
    let v = check_golden(
        "series_c3.json",
        &["series", "--c", "3", "--format", "json"],
    );
    assert_eq!(v["hilbert"], serde_json::json!(reference::SERIES_TABLE[0]));
    assert_eq!(v["component_count"], 2);
    let v = check_golden(
        "series_c7.json",
        &["series", "--c", "7", "--format", "json"],
    );
    assert_eq!(v["hilbert"], serde_json::json!(reference::SERIES_TABLE[4]));
    assert_eq!(v["component_count"], 3);
}

#[test]
fn golden_census_tangent_lefschetz() {
    let v = check_golden(
        "census_H1_s10_seed1.json",
        &[
            "census",
            "--target",
            "H1",
            "--samples",
            "10",
            "--seed",
            "1",
            "--format",
            "json",
        ],
    );
    assert_eq!(v["minima"], 2);
    assert_eq!(v["tables"].as_array().unwrap().len(), 3);
    let v = check_golden(
        "tangent_T1_Da_seed7.json",
        &[
            "tangent", "--points", "T1_Da", "--seed", "7", "--format", "json",
        ],
    );
    assert_eq!(v["tangent"]["dimension"], 29);
    let v = check_golden(
        "lefschetz_H1_A3_seed1.json",
        &[
            "lefschetz",
            "--witness",
            "H1_A3",
            "--seed",
            "1",
            "--format",
            "json",
        ],
    );
    assert_eq!(v["bar_graph"], serde_json::json!([4, 3, 3, 2]));
    assert_eq!(v["strong_lefschetz"], true);
}

#[test]
fn text_mode_uses_table_layout() {
    let o = levalg(&["betti", "--witness", "H1_A3"]);
    let out = stdout(&o);
    assert!(out.contains(" total:   1   7  10   4"), "{out}");
    assert!(out.contains("     2:   -   1   1   -"), "{out}");
    assert!(out.contains("     3:   -   4   8   4"), "{out}");
}

#[test]
fn csv_mode() {
    let o = levalg(&["betti", "--witness", "H1_A1", "--format", "csv"]);
    assert_eq!(
        stdout(&o),
        "row,0,1,2,3\ntotal,1,6,9,4\n0,1,0,0,0\n1,0,2,0,0\n2,0,0,1,0\n3,0,4,8,4\n"
    );
    let o = levalg(&["hilbert", "--ideal", "x^2, y^2, z^2", "--format", "csv"]);
    assert_eq!(stdout(&o), "degree,H\n0,1\n1,3\n2,3\n3,1\n");
}

#[test]
fn randomized_commands_require_a_seed() {
    for args in [
        &["census"][..],
        &["tangent", "--points", "T1_C1"],
        &["witness", "--witness", "H2_B3"],
        &["lefschetz", "--witness", "H1_A3"],
        &["paper-check", "--only", "8"],
    ] {
        let o = levalg(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(stderr(&o).contains("--seed"), "{args:?}");
    }
    // unseeded witnesses need no seed
    assert!(levalg(&["witness", "--witness", "H1_A2"]).status.success());
}

#[test]
fn seed_and_prime_from_environment() {
    let run = |env: &[(&str, &str)], args: &[&str]| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_levalg"));
        c.args(args)
            .env_remove("LEVALG_SEED")
            .env_remove("LEVALG_PRIME");
        for (k, v) in env {
            c.env(k, v);
        }
        c.output().unwrap()
    };
    let args = ["witness", "--witness", "H2_C1", "--format", "json"];
    let from_env = run(&[("LEVALG_SEED", "3")], &args);
    let from_flag = run(&[], &[&args[..], &["--seed", "3"]].concat());
    assert!(from_env.status.success());
    assert_eq!(from_env.stdout, from_flag.stdout);
    // flags win over the environment
    let both = run(
        &[("LEVALG_SEED", "99")],
        &[&args[..], &["--seed", "3"]].concat(),
    );
    assert_eq!(both.stdout, from_flag.stdout);
    let p = run(
        &[("LEVALG_PRIME", "101")],
        &["hilbert", "--witness", "H1_A1"],
    );
    assert!(p.status.success());
    let bad = run(
        &[("LEVALG_PRIME", "100")],
        &["hilbert", "--witness", "H1_A1"],
    );
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_two_and_name_the_token() {
    let o = levalg(&["hilbert", "--ideal", "x^2, y^2 + w3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("w3"), "{}", stderr(&o));
    let o = levalg(&["hilbert", "--ideal", "x^2 + y"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("y"), "{}", stderr(&o));
    assert_eq!(levalg(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        levalg(&["betti", "--witness", "H9_Z"]).status.code(),
        Some(2)
    );
    assert_eq!(levalg(&["series", "--c", "2"]).status.code(), Some(2));
    assert_eq!(levalg(&["betti"]).status.code(), Some(2));
    assert_eq!(levalg(&["--help"]).status.code(), Some(0));
}

#[test]
fn output_is_deterministic() {
    let args = [
        "census",
        "--target",
        "H2",
        "--samples",
        "6",
        "--seed",
        "5",
        "--format",
        "json",
    ];
    let a = levalg(&args);
    let b = levalg(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let args = ["points", "--points", "T2_C1", "--seed", "2"];
    assert_eq!(levalg(&args).stdout, levalg(&args).stdout);
}

#[test]
fn points_report_round_trips_through_a_file() {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let path = dir.join("t1_db.txt");
    let p = path.to_str().unwrap();
    let o = levalg(&["points", "--points", "T1_Db", "--seed", "4", "--out", p]);
    assert!(o.status.success(), "{}", stderr(&o));
    let o = levalg(&["hilbert", "--file", p, "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["h_vector"], serde_json::json!([1, 3, 4, 4]));
    assert_eq!(v["T"], serde_json::json!([1, 4, 8, 12, 12]));
    let o = levalg(&["tangent", "--file", p]);
    assert!(
        stdout(&o).contains("tangent dimension 28"),
        "{}",
        stdout(&o)
    );
    let o = levalg(&["hilbert", "--file", p, "--prime", "101"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn deform_reports_special_and_general_members() {
    let o = levalg(&[
        "deform",
        "--family",
        "H1_family",
        "--t",
        "0",
        "--format",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["totals"], serde_json::json!([1, 7, 10, 4]));
    assert_eq!(v["contains_limit_form"], true);
    let o = levalg(&[
        "deform",
        "--family",
        "H1_family",
        "--t",
        "5",
        "--format",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["totals"], serde_json::json!([1, 6, 9, 4]));
    let o = levalg(&["deform", "--family", "H2_family", "--t", "3", "--seed", "2"]);
    assert!(stdout(&o).contains("contains limit form: true"));
}

#[test]
fn socle_level_and_witness_commands() {
    let o = levalg(&["level", "--witness", "H1_maxBetti", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["level"], false);
    assert_eq!(v["type"], 5);
    let o = levalg(&["socle", "--witness", "H1_A2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["socle"], serde_json::json!([0, 0, 0, 4]));
    let o = levalg(&[
        "witness",
        "--witness",
        "H2_B4",
        "--seed",
        "1",
        "--format",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["H"], serde_json::json!([1, 3, 6, 8, 9, 3]));
}

#[test]
fn series_construction_flag() {
    let o = levalg(&[
        "series",
        "--c",
        "3",
        "--a",
        "2",
        "--construct",
        "--seed",
        "1",
        "--format",
        "json",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["construction"]["matches"], true);
    assert_eq!(v["construction"]["n"], 9);
    assert_eq!(v["construction"]["bound"], 15);
    assert_eq!(v["selected"]["component"], 34);
}

#[test]
fn paper_check_single_criterion() {
    let o = levalg(&["paper-check", "--only", "8", "--seed", "1"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).starts_with("PASS  8 series formulas"));
    assert_eq!(
        levalg(&["paper-check", "--only", "12", "--seed", "1"])
            .status
            .code(),
        Some(2)
    );
}
