use std::path::PathBuf;
use std::process::Command;

use sklyanin::cli::{run, CenterDoc, Command as Cmd, RunConfig, SpecializeDoc};
use sklyanin::reps::RepReport;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_sklyanin"))
}

fn fixture() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures/pi6_dim2.json")
}

#[test]
fn sigma_order_json() {
    let out = bin().args(["sigma-order", "--params", "1,1,2", "--json"]).output().unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["order"], 2);
}

#[test]
fn output_is_deterministic() {
    let args = ["center", "--params", "1,-1,-1"];
    let a = bin().args(args).output().unwrap();
    let b = bin().args(args).output().unwrap();
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let doc: CenterDoc = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(doc.n, 6);
    assert_eq!(doc.f.decode(12).unwrap().coeff(&[1, 0, 0, 4]).to_string_in(12), "1/36");
    assert_eq!(serde_json::to_string_pretty(&doc).unwrap() + "\n", String::from_utf8(a.stdout).unwrap());
}

#[test]
fn verify_rep_fixture() {
    let out = bin().arg("verify-rep").arg("--file").arg(fixture()).output().unwrap();
    assert!(out.status.success());
    let r: RepReport = serde_json::from_slice(&out.stdout).unwrap();
    assert!(r.relations_ok && r.irreducible && r.stratum_consistent);
    assert_eq!(r.span_dim, 4);
    assert_eq!(r.stratum.as_deref(), Some("Y2"));
}

#[test]
fn failures_exit_nonzero() {
    let out = bin().args(["sigma-order", "--params", "1,1,1"]).output().unwrap();
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("error"));
    let out = bin().args(["specialize", "--params", "1,1,2"]).output().unwrap();
    assert!(!out.status.success());
    let out = bin().args(["verify-rep", "--file", "/nonexistent.json"]).output().unwrap();
    assert!(!out.status.success());
}

#[test]
fn out_flag_and_threads() {
    let dir = std::env::temp_dir().join(format!("sklyanin-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("fig.svg");
    let out = bin()
        .env("SKLYANIN_THREADS", "2")
        .args(["figure1", "--n", "6", "--out"])
        .arg(&path)
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(std::fs::read_to_string(&path).unwrap().starts_with("<svg"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn specialize_document() {
    let mut cfg = RunConfig::with_params("1,1,2");
    cfg.direction = "1,0,0".into();
    let out = run(&Cmd::Specialize { level_bound: 16 }, &cfg).unwrap();
    let doc: SpecializeDoc = serde_json::from_str(&out.body).unwrap();
    assert_eq!(doc.level, 1);
    assert_eq!(doc.eta, "1/7");
    assert_eq!(doc.derivations.len(), 4);
    assert!(doc.derivations.iter().all(|row| row.len() == 3));
}
