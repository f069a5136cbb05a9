mod common;

use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Stdio};

use common::{FIGURE_EIGHT, TREFOIL};
use sgknot::records::read_records;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_sgknot"));
    c.env_remove("SGKNOT_CACHE_DIR");
    c
}

fn file(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("sgknot-it-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = bin().args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap())
}

#[test]
fn structured_output_is_byte_identical_across_runs() {
    let t = file("t.txt", TREFOIL);
    let f = file("f.txt", FIGURE_EIGHT);
    let m = file("m.txt", "*O1+ M+ U2- O3+ U1+ M- O2- U3+");
    let (t, f, m) = (t.to_str().unwrap(), f.to_str().unwrap(), m.to_str().unwrap());
    let jobs: Vec<Vec<&str>> = vec![
        vec!["label", m],
        vec!["degree", m],
        vec!["lift", m, "--from", "-1", "--to", "1"],
        vec!["colorings", t, "--q", "3", "--n", "1"],
        vec!["quandle-search", "--q", "2", "--n", "2"],
        vec!["bracket", m, "--kauffman"],
        vec!["check-relations", "--kauffman", "--window", "1"],
        vec!["unknot-bound", f],
        vec!["sample", "--count", "5", "--marks", "2"],
        vec!["equiv", t, t],
    ];
    for job in jobs {
        let mut args = vec!["--format", "structured"];
        args.extend(&job);
        let a = run(&args);
        let b = run(&args);
        assert_eq!(a, b, "{:?}", job);
        let (h, _) = read_records(&a.1).unwrap_or_else(|e| panic!("{:?}: {}", job, e));
        assert_eq!(h.command, job[0]);
    }
}

#[test]
fn reads_standard_input() {
    let mut child = bin().args(["degree", "-"]).stdin(Stdio::piped()).stdout(Stdio::piped()).spawn().unwrap();
    child.stdin.take().unwrap().write_all(b"*M+ M+ M-\n").unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "1\n");
}

#[test]
fn exit_codes() {
    let bad = file("bad.txt", "*O1+ U1+ Q\n");
    let (code, _, err) = run(&["validate", bad.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(err.contains("bad.txt:1:"), "{}", err);
    let half = file("half.txt", "*O1+\n");
    let (code, out, _) = run(&["validate", half.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert_eq!(out, "crossing c1 unpaired\n");
    let (code, _, _) = run(&["colorings", half.to_str().unwrap()]);
    assert_eq!(code, 1);
    let (code, _, _) = run(&["no-such-command"]);
    assert_eq!(code, 2);
    let (code, _, _) = run(&["quandle-search", "--q", "9", "--n", "1"]);
    assert_eq!(code, 2);
}

#[test]
fn moves_apply_and_output_file() {
    let u = file("u.txt", "*");
    let moves = file("moves.json", r#"[{"kind":"R1+","gap":{"component":0,"index":0},"first":"Over","sign":"Pos"}]"#);
    let out = std::env::temp_dir().join(format!("sgknot-it-{}/moved.txt", std::process::id()));
    let (code, stdout, err) = run(&["moves-apply", u.to_str().unwrap(), "--moves", moves.to_str().unwrap(), "-o", out.to_str().unwrap()]);
    assert_eq!(code, 0, "{}", err);
    assert!(stdout.is_empty());
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.ends_with("\n*O1+ U1+\n"), "{}", text);
}
