use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn tcl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tcl")).args(args).current_dir(root()).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn check_accepts_the_transitivity_proof() {
    let o = tcl(&["check", "corpus/transitivity.tcp"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "accepted; 1 basic cycle; normal");
}

#[test]
fn check_prints_the_rejection_witness() {
    let o = tcl(&["check", "corpus/bad_no_progress.tcp"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("period [0, 1, 2]"), "{}", stdout(&o));
}

#[test]
fn normal_flag_rejects_overlapping_cycles_only() {
    assert_eq!(tcl(&["check", "--normal", "corpus/monotonicity.tcp"]).status.code(), Some(0));
    assert_eq!(tcl(&["check", "--normal", "corpus/cyc_ind_twice.tcp"]).status.code(), Some(0));
}

#[test]
fn exit_codes_over_the_corpus() {
    for entry in std::fs::read_dir(root().join("corpus")).unwrap() {
        let path = entry.unwrap().path();
        let name = path.file_stem().unwrap().to_string_lossy().into_owned();
        let o = tcl(&["check", path.to_str().unwrap()]);
        let want = if name.starts_with("bad_") { 1 } else { 0 };
        assert_eq!(o.status.code(), Some(want), "{name}: {}", stdout(&o));
    }
}

#[test]
fn prove_refutes_a_satisfiable_antecedent() {
    let o = tcl(&["prove", "(rtc x y. p(x,y))(a,a) |- "]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("refuted; counter-model of size 1"));
}

#[test]
fn prove_writes_a_checkable_proof() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("trans.tcp");
    let goal = "(rtc x y. p(x,y))(a,b), (rtc x y. p(x,y))(b,c) |- (rtc x y. p(x,y))(a,c)";
    let o = tcl(&["prove", goal, "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stderr).contains("1 basic cycle"));
    let o = tcl(&["check", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn prove_with_a_theory_file() {
    let o = tcl(&["prove", "--theory", "theories/step.tc", "p(0), (rtc x y. s(x) = y)(0, n) |- p(n)"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("tcproof 1"));
}

#[test]
fn prove_with_a_bundled_theory_name() {
    let o = tcl(&["prove", "--theory", "step", "p(0), (rtc x y. s(x) = y)(0, n) |- p(n)"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("tcproof 1"));
    assert_eq!(tcl(&["prove", "--theory", "no_such_theory", "|- a = a"]).status.code(), Some(3));
}

#[test]
fn prove_reports_unknown_on_a_tiny_budget() {
    let goal = "(rtc x y. p(x,y))(a,b), (rtc x y. p(x,y))(b,c) |- (rtc x y. p(x,y))(a,c)";
    let o = tcl(&["prove", goal, "--max-nodes", "3", "--model-size", "0"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn refute_finds_or_rules_out_models() {
    let o = tcl(&["refute", "|- (rtc x y. E(x,y))(a,b)"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("size 2"));
    let o = tcl(&["refute", "--model-size", "3", "|- (rtc x y. E(x,y))(a,a)"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn translate_ind_output_checks() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("cyc.tcp");
    let o = tcl(&["translate-ind", "corpus/ind_step_axiom.tcp", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let o = tcl(&["check", "--normal", out.to_str().unwrap()]);
    assert_eq!(stdout(&o).trim(), "accepted; 1 basic cycle; normal");
    let o = tcl(&["translate-ind", "corpus/transitivity.tcp"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn translate_beta_modes() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("le.f");
    std::fs::write(&f, "(rtc w u. s(w) = u)(a, b)\n").unwrap();
    let b = dir.path().join("b.f");
    std::fs::write(&b, "beta(c, i, k)\n").unwrap();
    let o = tcl(&["translate-beta", f.to_str().unwrap(), "--beta", b.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("a = b \\/ (exists _b0. exists _b1. beta(_b1, 0, a)"));
    assert!(!stdout(&o).contains("rtc"));
    let o = tcl(&["translate-beta", f.to_str().unwrap(), "--mode", "tc"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("rtc"));
}

#[test]
fn render_formats() {
    let o = tcl(&["render", "corpus/bad_no_progress.tcp"]);
    assert!(stdout(&o).starts_with("digraph proof {"));
    assert!(stdout(&o).contains("fillcolor"));
    let o = tcl(&["render", "--format", "tex", "corpus/transitivity.tcp"]);
    assert!(stdout(&o).contains("\\begin{prooftree}"));
    let o = tcl(&["render", "--format", "text", "corpus/reflexivity.tcp"]);
    assert!(stdout(&o).contains("[0]"));
}

#[test]
fn usage_and_io_errors_exit_3() {
    assert_eq!(tcl(&["frobnicate"]).status.code(), Some(3));
    assert_eq!(tcl(&["check"]).status.code(), Some(3));
    assert_eq!(tcl(&["check", "corpus/does_not_exist.tcp"]).status.code(), Some(3));
    assert_eq!(tcl(&["prove", "p(a |-"]).status.code(), Some(3));
    assert_eq!(tcl(&["translate-beta", "corpus", "--mode", "sideways"]).status.code(), Some(3));
}

#[test]
fn output_is_deterministic() {
    let a = tcl(&["prove", "(rtc x y. p(x,y))(a,b), (rtc x y. p(x,y))(b,c) |- (rtc x y. p(x,y))(a,c)"]);
    let b = tcl(&["prove", "(rtc x y. p(x,y))(a,b), (rtc x y. p(x,y))(b,c) |- (rtc x y. p(x,y))(a,c)"]);
    assert_eq!(a.stdout, b.stdout);
}
