//! End-to-end tests of the `antiorb` binary: exit-code contract, report
//! determinism, and the table file formats.

use std::path::PathBuf;
use std::process::{Command, Output};

use antiorb_core::cyclotomic::CycNum;
use antiorb_core::finitefield::FqField;
use antiorb_core::quiver::GradedDims;
use antiorb_core::transform::{FuncTable, SpaceDescriptor};

fn antiorb(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_antiorb"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn tmp(name: &str) -> PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("antiorb-test-{}-{}", std::process::id(), name));
    p
}

#[test]
fn kloosterman_report_and_exit() {
    let out = antiorb(&["kloosterman", "--m", "2", "--q", "3", "--lambda", "1"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["bound_ok"], serde_json::json!(true));
    // K^2(1) = -1 over F_3.
    assert_eq!(v["value"], serde_json::json!(["-1/1", "0/1"]));
    assert_eq!(v["version"], serde_json::json!(antiorb_core::VERSION));
}

#[test]
fn biorbital_match_exits_zero() {
    let out = antiorb(&["biorbital", "--m", "2", "--dims", "1,1", "--q", "3"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["dimension"], serde_json::json!(2));
    assert_eq!(v["aperiodic_count"], serde_json::json!(2));
    assert_eq!(v["match"], serde_json::json!(true));
}

#[test]
fn identical_config_gives_byte_identical_reports() {
    let args = [
        "verify-commutation",
        "--kind",
        "induction",
        "--q",
        "3",
        "--split",
        "1,1+1,1",
        "--seed",
        "7",
    ];
    let a = antiorb(&args);
    let b = antiorb(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn usage_errors_exit_two() {
    let out = antiorb(&["kloosterman", "--m", "2", "--q", "11", "--lambda", "1"]);
    assert_eq!(out.status.code(), Some(2));
    let out = antiorb(&["kloosterman", "--m", "2", "--q", "3", "--lambda", "0"]);
    assert_eq!(out.status.code(), Some(2));
    let out = antiorb(&["case", "nonsense", "--q", "3"]);
    assert_eq!(out.status.code(), Some(2));
    let out = antiorb(&["no-such-command"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn budget_violations_exit_three() {
    let out = Command::new(env!("CARGO_BIN_EXE_antiorb"))
        .args(["orbits", "--m", "2", "--dims", "2,2", "--q", "3"])
        .env("ANTIORB_BUDGET", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn fourier_files_round_trip() {
    let field = FqField::for_q(3).unwrap();
    let dims = GradedDims::new(2, vec![1, 1]);
    let space = SpaceDescriptor::for_quiver(&field, &dims, 1);
    let table = FuncTable::delta(space, 0).unwrap();

    let f_in = tmp("f.json");
    let f_hat = tmp("fhat.json");
    let f_bin = tmp("fhat.aorb");
    std::fs::write(&f_in, serde_json::to_vec_pretty(&table).unwrap()).unwrap();

    let out = antiorb(&[
        "fourier",
        "--in",
        f_in.to_str().unwrap(),
        "--out-table",
        f_hat.to_str().unwrap(),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let hat: FuncTable = serde_json::from_slice(&std::fs::read(&f_hat).unwrap()).unwrap();
    // delta_0 transforms to the constant 1 table.
    assert!(hat.values.iter().all(|v| *v == CycNum::one(3)));
    assert_eq!(hat.norm_halves, 2);

    // Binary output, then transform again: double transform of delta_0 is
    // q^N delta_0 (fixed point of negation).
    let out = antiorb(&[
        "fourier",
        "--in",
        f_hat.to_str().unwrap(),
        "--out-table",
        f_bin.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let bytes = std::fs::read(&f_bin).unwrap();
    assert!(bytes.starts_with(b"AORB1"));
    let f_back = tmp("back.json");
    let out = antiorb(&[
        "fourier",
        "--in",
        f_bin.to_str().unwrap(),
        "--out-table",
        f_back.to_str().unwrap(),
    ]);
    assert!(out.status.success());

    for p in [f_in, f_hat, f_bin, f_back] {
        let _ = std::fs::remove_file(p);
    }
}

#[test]
fn decompose_reads_rep_json() {
    let rep = serde_json::json!({
        "field": {"p": 3, "k": 1, "modulus": [0, 1]},
        "m": 2,
        "eps": 1,
        "dims": [1, 1],
        "blocks": [[1], [1]],
    });
    let path = tmp("rep.json");
    std::fs::write(&path, serde_json::to_vec(&rep).unwrap()).unwrap();
    let out = antiorb(&["decompose", "--in", path.to_str().unwrap()]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["nilpotent"], serde_json::json!(false));
    // T^2 = 1: one eigen part with polynomial x - 1 = [2, 1].
    assert_eq!(
        v["label"]["eigen_parts"][0]["poly"],
        serde_json::json!([2, 1])
    );
    let _ = std::fs::remove_file(path);
}

#[test]
fn case_symmetric_is_exploratory_not_failing() {
    let out = antiorb(&["case", "symmetric", "--q", "3"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["report"]["passed"], serde_json::json!(true));
}

#[test]
fn orbits_report_lists_labels() {
    let out = antiorb(&["orbits", "--m", "2", "--dims", "1,1", "--q", "3"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["orbit_count"], serde_json::json!(5));
}

#[test]
fn induce_from_file() {
    let field = FqField::for_q(3).unwrap();
    let dims = GradedDims::new(2, vec![1, 1]);
    let space = SpaceDescriptor::for_quiver(&field, &dims, 1);
    let table = FuncTable::delta(space, 0).unwrap();
    let input = serde_json::json!({
        "eps": 1,
        "parts": [
            {"dims": {"m": 2, "dims": [1, 1]}, "table": table},
            {"dims": {"m": 2, "dims": [1, 1]}, "table": table},
        ],
    });
    let p_in = tmp("parts.json");
    let p_out = tmp("induced.json");
    std::fs::write(&p_in, serde_json::to_vec(&input).unwrap()).unwrap();
    let out = antiorb(&[
        "induce",
        "--in",
        p_in.to_str().unwrap(),
        "--out-table",
        p_out.to_str().unwrap(),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let induced: FuncTable = serde_json::from_slice(&std::fs::read(&p_out).unwrap()).unwrap();
    // Ind(delta_0, delta_0)(T) counts T-stable graded (1,1)-subspaces on
    // which T vanishes and whose quotient map also vanishes; at T = 0 every
    // one of the (q+1)^2 subspace pairs qualifies.
    assert_eq!(induced.values[0], CycNum::from_integer(3, 16));
    let _ = std::fs::remove_file(p_in);
    let _ = std::fs::remove_file(p_out);
}
