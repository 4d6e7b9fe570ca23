use std::fs;
use std::io::Write;
use std::process::{Command, Output, Stdio};

use tempfile::TempDir;

const FIG_INSTANCE: &str = "q x y z\nx y z\nq x z\n";
const K5_INSTANCE: &str = "a b c d e\n\
a b c\na b d\na b e\na c d\na c e\na d e\nb c d\nb c e\nb d e\nc d e\n";

fn run(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_trinets"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn trinets");
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn solve_single_binet() {
    let out = run(&["solve"], "T(x,y)\n");
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "(x,y);\n");
}

#[test]
fn solve_writes_output_and_dot() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "in.txt", "T(x,y)\n");
    let net = dir.path().join("out.nwk");
    let dot = dir.path().join("out.dot");
    let out = run(
        &["solve", "-i", &input, "-o", net.to_str().unwrap(), "--dot", dot.to_str().unwrap()],
        "",
    );
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    assert_eq!(fs::read_to_string(&net).unwrap(), "(x,y);\n");
    assert!(fs::read_to_string(&dot).unwrap().starts_with("digraph"));
}

#[test]
fn conflicting_input_has_no_solution() {
    let out = run(&["solve"], "S1(a,b;c)\nS1(b,c;a)\n");
    assert_eq!(code(&out), 1);
    assert!(out.stdout.is_empty());
}

#[test]
fn tiny_only_rejects_s1() {
    let out = run(&["solve", "--tiny-only"], "S1(a,b;c)\n");
    assert_eq!(code(&out), 3);
}

#[test]
fn binets_only_rejects_trinets() {
    let out = run(&["solve", "--binets-only"], "T1(a,b;c)\n");
    assert_eq!(code(&out), 3);
    let out = run(&["solve", "--binets-only"], "N(a;b)\nT(b,c)\n");
    assert_eq!(code(&out), 0);
}

#[test]
fn malformed_input_is_an_input_error() {
    assert_eq!(code(&run(&["solve"], "garbage(\n")), 3);
    assert_eq!(code(&run(&["solve", "-i", "/nonexistent/file"], "")), 3);
    assert_eq!(code(&run(&["frobnicate"], "")), 3);
    assert_eq!(code(&run(&["--help"], "")), 0);
}

#[test]
fn budget_exhaustion_is_unknown() {
    let reduced = run(&["reduce"], K5_INSTANCE);
    assert_eq!(code(&reduced), 0);
    let out = run(&["solve", "--budget", "1"], &stdout(&reduced));
    assert_eq!(code(&out), 2);
}

#[test]
fn reduced_instances_follow_splittability() {
    let reduced = run(&["reduce"], FIG_INSTANCE);
    assert_eq!(code(&reduced), 0);
    assert_eq!(code(&run(&["solve", "-i", "-"], &stdout(&reduced))), 0);

    let reduced = run(&["reduce"], K5_INSTANCE);
    assert_eq!(code(&run(&["solve"], &stdout(&reduced))), 1);
}

#[test]
fn check_lists_undisplayed_items() {
    let dir = TempDir::new().unwrap();
    let net = write(&dir, "net.nwk", "((a,b),c);\n");
    let ok = write(&dir, "ok.txt", "T1(a,b;c)\nT(a,c)\n");
    let bad = write(&dir, "bad.txt", "T1(a,b;c)\nT1(a,c;b)\n");

    let out = run(&["check", "-n", &net, "-i", &ok], "");
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());

    let out = run(&["check", "-n", &net, "-i", &bad], "");
    assert_eq!(code(&out), 1);
    assert_eq!(stdout(&out), "T1(a,c;b)\n");
}

#[test]
fn check_reports_missing_taxa() {
    let dir = TempDir::new().unwrap();
    let net = write(&dir, "net.nwk", "(a,b);\n");
    let items = write(&dir, "items.txt", "T(a,b)\ntaxa: z\n");
    let out = run(&["check", "-n", &net, "-i", &items], "");
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains('z'));
}

#[test]
fn extract_then_solve_round_trips() {
    let dir = TempDir::new().unwrap();
    let src = "((a,(b,(c)#H1)),(#H1,(d,e)));\n";
    let net = write(&dir, "net.nwk", src);
    let extracted = run(&["extract", "-n", &net], "");
    assert_eq!(code(&extracted), 0);
    let solved = run(&["solve"], &stdout(&extracted));
    assert_eq!(code(&solved), 0);

    let solved_path = write(&dir, "solved.nwk", &stdout(&solved));
    let items = write(&dir, "items.txt", &stdout(&extracted));
    assert_eq!(code(&run(&["check", "-n", &solved_path, "-i", &items], "")), 0);
    let again = run(&["extract", "-n", &solved_path], "");
    assert_eq!(stdout(&again), stdout(&extracted));
}

#[test]
fn extract_filters() {
    let src = "((a,(b,(c)#H1)),(#H1,d));\n";
    let binets = stdout(&run(&["extract", "--binets-only"], src));
    assert!(binets.lines().filter(|l| !l.starts_with("taxa:")).all(|l| l.starts_with("T(") || l.starts_with("N(")));
    let all = stdout(&run(&["extract"], src));
    let tiny = stdout(&run(&["extract", "--tiny-only"], src));
    assert!(tiny.lines().count() < all.lines().count());
}

#[test]
fn enumerate_three_taxa() {
    let out = run(&["enumerate", "--taxa", "a,b,c"], "");
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).lines().count(), 36);
    assert_eq!(code(&run(&["enumerate", "--taxa", "a,b,c,d,e,f,g"], "")), 3);
    assert_eq!(code(&run(&["enumerate", "--taxa", "a,a"], "")), 3);
}

#[test]
fn tinyfy_removes_large_cycles() {
    let out = run(&["tinyfy"], "((a,(b,(c)#H1)),(#H1,d));\n");
    assert_eq!(code(&out), 0);
    let tiny = stdout(&out);
    let extracted = stdout(&run(&["extract"], &tiny));
    let tiny_items = stdout(&run(&["extract", "--tiny-only"], &tiny));
    assert_eq!(extracted, tiny_items);
}

#[test]
fn supernet_merges_networks() {
    let out = run(&["supernet"], "((a,b),c);\n((a,b),d);\n((c,d),a);\n");
    assert_eq!(code(&out), 0);
    let dir = TempDir::new().unwrap();
    let net = write(&dir, "net.nwk", &stdout(&out));
    let items = write(&dir, "items.txt", "T1(a,b;c)\nT1(a,b;d)\nT1(c,d;a)\n");
    assert_eq!(code(&run(&["check", "-n", &net, "-i", &items], "")), 0);
}
