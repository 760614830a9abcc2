use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use qconv::{ErrorFrame, Pauli, StabilizerSpec};
use tempfile::TempDir;

const EXAMPLE: &str = "# [3,1,1] code\nqcc n=3 k=1 m=1\nXXXXZY\nZZZZYX\n";

fn qconv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qconv")).args(args).env_remove("QCONV_THREADS").output().unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn to_hex(bits: &[u8]) -> String {
    let mut padded = bits.to_vec();
    padded.resize(bits.len().div_ceil(4) * 4, 0);
    padded.chunks(4).map(|c| format!("{:x}", c.iter().fold(0, |acc, &b| acc << 1 | b))).collect()
}

#[test]
fn verify_example_passes() {
    let dir = TempDir::new().unwrap();
    let spec = write(&dir, "ex.qcc", EXAMPLE);
    let out = qconv(&["verify", s(&spec)]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(String::from_utf8_lossy(&out.stdout).contains("commutation: ok"));
}

#[test]
fn verify_mutation_fails_with_witness() {
    let dir = TempDir::new().unwrap();
    let spec = write(&dir, "bad.qcc", "qcc n=3 k=1 m=1\nXXXXZX\nZZZZYX\n");
    let out = qconv(&["verify", s(&spec)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("generators"));
}

#[test]
fn input_errors_exit_with_two() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.qcc", "qcc n=3 k=1 m=1\nXXXXZY\n");
    assert_eq!(qconv(&["verify", s(&bad)]).status.code(), Some(2));
    assert_eq!(qconv(&["derive", s(&dir.path().join("missing.qcc"))]).status.code(), Some(2));
    let spec = write(&dir, "ex.qcc", EXAMPLE);
    let hex = write(&dir, "s.hex", "zz");
    assert_eq!(qconv(&["decode", s(&spec), "--syndrome", s(&hex)]).status.code(), Some(2));
    assert_eq!(qconv(&["simulate", s(&spec), "--p", "0.7", "--frames", "1"]).status.code(), Some(2));
    assert_eq!(qconv(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn derive_prints_transfer_matrices() {
    let dir = TempDir::new().unwrap();
    let spec = write(&dir, "ex.qcc", EXAMPLE);
    let out = qconv(&["derive", s(&spec)]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("# H_b\n1+D^2, 1+D^3, 1+D^2+D^3\nD+D^3, D+D^2+D^3, D+D^2\n"), "{text}");
    assert!(text.contains("# H_q\n1+D, 1+w*D, 1+w2*D\n"), "{text}");
}

#[test]
fn decode_zero_syndrome_is_identity() {
    let dir = TempDir::new().unwrap();
    let spec = write(&dir, "ex.qcc", EXAMPLE);
    let hex = write(&dir, "zero.hex", "000\n");
    let out = qconv(&["decode", s(&spec), "--syndrome", s(&hex)]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), "III".repeat(4));
}

#[test]
fn decode_recovers_a_single_error() {
    let dir = TempDir::new().unwrap();
    let spec_path = write(&dir, "ex.qcc", EXAMPLE);
    let spec: StabilizerSpec = EXAMPLE.parse().unwrap();
    let mut e = ErrorFrame::identity(30);
    e.set_pauli(13, Pauli::Y);
    let syn = spec.syndrome_of(&e.padded(spec.padding_qubits())).unwrap();
    let hex = write(&dir, "s.hex", &to_hex(&syn));
    for field in ["binary", "quaternary"] {
        let out = qconv(&["decode", s(&spec_path), "--syndrome", s(&hex), "--blocks", "10", "--field", field]);
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
        assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), e.to_string());
    }
}

#[test]
fn simulate_is_reproducible_across_thread_counts() {
    let dir = TempDir::new().unwrap();
    let spec = write(&dir, "ex.qcc", EXAMPLE);
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    let common = ["--p", "0.01,0.05", "--frames", "30", "--seed", "4"];
    let mut args = vec!["simulate", s(&spec)];
    args.extend(common);
    let run = |out: &Path, threads: &str| {
        let mut v = args.clone();
        v.extend(["--out", s(out), "--threads", threads]);
        assert_eq!(qconv(&v).status.code(), Some(0));
    };
    run(&a, "1");
    run(&b, "3");
    let csv = fs::read_to_string(&a).unwrap();
    assert_eq!(csv, fs::read_to_string(&b).unwrap());
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "# qconv-sweep v1");
    assert!(lines[1].ends_with("rate=300/906"));
    assert_eq!(lines[2], "p,frames,qubit_errors,qubits_total,qber,frame_errors,fer,seed,elapsed_ms");
    assert_eq!(lines.len(), 5);
    assert!(lines[3].starts_with("0.01,30,") && lines[3].ends_with(",4,"));
}

#[test]
fn thread_override_from_environment() {
    let dir = TempDir::new().unwrap();
    let spec = write(&dir, "ex.qcc", EXAMPLE);
    let out = Command::new(env!("CARGO_BIN_EXE_qconv"))
        .args(["simulate", s(&spec), "--p", "0.01", "--frames", "2"])
        .env("QCONV_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}
