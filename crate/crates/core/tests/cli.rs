use std::path::PathBuf;
use std::process::{Command, Output};

use rldual::algebra::print_algebra;
use rldual::fixtures;

fn rldual(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rldual"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("rldual-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

#[test]
fn bowtie_suite_on_nm4() {
    let o = rldual(&["verify", "--suite", "bowtie", "--input", "nm4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("alpha: bijective, order-iso, ∘-compatible"));
}

#[test]
fn enumerate_two() {
    let o = rldual(&["enumerate", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "1 chain");
}

#[test]
fn spectrum_of_g3_as_dot() {
    let o = rldual(&["spectrum", "--input", "g3", "--format", "dot"]);
    assert_eq!(o.status.code(), Some(0));
    let dot = stdout(&o);
    let nodes = dot
        .lines()
        .filter(|l| l.trim_start().starts_with('p') && l.contains('['))
        .count();
    let edges = dot.lines().filter(|l| l.contains("->")).count();
    assert_eq!((nodes, edges), (2, 1), "{dot}");
}

#[test]
fn verify_all_passes() {
    let o = rldual(&["verify", "--all", "--max-size", "4"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains(" 0 failed"));
}

#[test]
fn printed_fixture_reads_back() {
    let p = scratch("g4.alg", &print_algebra(&fixtures::g4().spec()));
    let o = rldual(&["validate", "--input", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "g4: valid");
}

#[test]
fn invalid_algebra_exits_one() {
    let text = "name: broken\nmode: bounded\nsize: 3\nleq:\n111\n011\n001\nmul:\n0 0 0\n0 1 0\n0 0 2\none: 2\nzero: 0\n";
    let p = scratch("broken.alg", text);
    let o = rldual(&["validate", "--input", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("broken: invalid"));
}

#[test]
fn input_errors_exit_two() {
    let heyting = scratch("heyting5.alg", &print_algebra(&fixtures::heyting5().spec()));
    assert_eq!(rldual(&["enumerate", "9"]).status.code(), Some(2));
    assert_eq!(
        rldual(&["spectrum", "--input", "/nonexistent/a.alg"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        rldual(&["verify", "--suite", "nope", "--input", "g3"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        rldual(&[
            "verify",
            "--suite",
            "bowtie",
            "--input",
            heyting.to_str().unwrap()
        ])
        .status
        .code(),
        Some(2)
    );
    let p = scratch("garbage.alg", "size: three\n");
    assert_eq!(
        rldual(&["classify", "--input", p.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn json_output_parses() {
    for cmd in [
        "classify",
        "spectrum",
        "bowtie",
        "rotate",
        "dualquad-extract",
    ] {
        let o = rldual(&[cmd, "--input", "nm4", "--format", "json"]);
        assert_eq!(o.status.code(), Some(0), "{cmd}");
        serde_json::from_slice::<serde_json::Value>(&o.stdout)
            .unwrap_or_else(|e| panic!("{cmd}: {e}"));
    }
}
