use std::fs;
use std::process::Command;

fn balclust(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_balclust"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
    )
}

fn temp_file(name: &str, text: &str) -> String {
    let dir = std::env::temp_dir().join(format!("balclust-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn solve_p3_without_budget() {
    let f = temp_file("p3.bce", "BCE 3 2 0 0\n0 1\n1 2\n");
    for algo in ["oracle", "partition", "fast", "branch"] {
        let (code, out) = balclust(&["solve", &f, "--algo", algo]);
        assert_eq!(code, 0);
        assert!(out.contains("answer: no"), "{algo}: {out}");
    }
}

#[test]
fn solve_prints_verified_witness() {
    let f = temp_file("p3k1.bce", "BCE 3 2 1 0\n0 1\n1 2\n");
    let (code, out) = balclust(&["solve", &f, "--algo", "fast"]);
    assert_eq!(code, 0);
    assert!(out.contains("answer: yes"));
    assert!(out.contains("verified: true"));
}

#[test]
fn parse_and_usage_errors_exit_2() {
    let f = temp_file("dup.bce", "BCE 3 2 1 0\n0 1\n1 0\n");
    assert_eq!(balclust(&["solve", &f]).0, 2);
    assert_eq!(balclust(&["solve", &f, "--algo", "nope"]).0, 2);
    assert_eq!(balclust(&["gen", "example1", "5", "8"]).0, 2);
    assert_eq!(balclust(&["frobnicate"]).0, 2);
}

#[test]
fn kernelize_writes_reduced_file() {
    let (code, text) = balclust(&["gen", "cluster", "1,2,100", "--k", "2", "--eta", "97"]);
    assert_eq!(code, 0);
    let f = temp_file("big.bcc", &text);
    let out_path = temp_file("red.bcc", "");
    let (code, out) = balclust(&["kernelize", &f, "--out", &out_path]);
    assert_eq!(code, 0);
    assert!(out.contains("n_out: 14"), "{out}");
    assert!(fs::read_to_string(&out_path)
        .unwrap()
        .starts_with("BCC 14 "));
}

#[test]
fn gen_hardness_header() {
    let (code, out) = balclust(&["gen", "hardness", "4", "1,2", "1,1", "2,1"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("BCC 288 16738 3854 0\n"));
}
