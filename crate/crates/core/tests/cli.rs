use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn sfcalc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sfcalc")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("sfcalc-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    fs::write(&path, contents).unwrap();
    path
}

#[test]
fn polish_encoding_and_decoding() {
    let out = sfcalc(&["polish", "S(KK)"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "ASAKK");
    let out = sfcalc(&["polish", "--decode", "ASAKK"]);
    assert_eq!(stdout(&out).trim(), "S(KK)");
}

#[test]
fn reduce_applies_the_factorisation_rule() {
    let out = sfcalc(&["--calc", "sf", "reduce", "F(SS)MN"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "NSS");
}

#[test]
fn trace_lists_each_step() {
    let out = sfcalc(&["trace", "S K K x"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.lines().count() >= 2, "{text}");
    assert!(text.trim_end().ends_with('x'), "{text}");
}

#[test]
fn godel_numbers_round_trip() {
    let out = sfcalc(&["godel", "FF"]);
    assert_eq!(stdout(&out).trim(), "15");
    let out = sfcalc(&["--calc", "sf", "godel", "--decode", "15"]);
    assert_eq!(stdout(&out).trim(), "FF");
}

#[test]
fn lambda_translation() {
    let out = sfcalc(&["lambda", "\\0"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "SKK");
}

#[test]
fn eq_separates_extensionally_equal_terms() {
    let out = sfcalc(&["eq", "SKK", "SKS"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("different"), "{text}");
    assert!(text.contains("agree on 118 probes"), "{text}");
}

#[test]
fn budget_exhaustion_exits_with_three() {
    let out = sfcalc(&["--budget", "10", "reduce", "S(SKK)(SKK)(S(SKK)(SKK))"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("budget of 10 steps exhausted"));
}

#[test]
fn errors_and_usage_have_distinct_codes() {
    let out = sfcalc(&["demo", "nope"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("unknown demo"));
    assert_eq!(sfcalc(&["bogus"]).status.code(), Some(2));
    assert_eq!(sfcalc(&["reduce", "S ("]).status.code(), Some(1));
}

#[test]
fn failed_checks_exit_with_four() {
    let out = sfcalc(&["--budget", "3", "check", "sim", "arithmetic", "--max", "1"]);
    assert_eq!(out.status.code(), Some(4));
    assert!(stdout(&out).contains("TARGET-BUDGET"));
}

#[test]
fn demo_reports_agreement_and_distinction() {
    let out = sfcalc(&["demo", "skk-sks"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("SK agreement: 118/118"), "{text}");
    assert!(text.contains("SF eq: distinguishes"), "{text}");
}

#[test]
fn tsv_output_is_tab_separated() {
    let out = sfcalc(&["--tsv", "check", "sim", "arithmetic", "--max", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.lines().any(|l| l == "input\tlhs\trhs\tverdict"), "{text}");
    assert!(text.lines().filter(|l| l.ends_with("\tok")).count() > 0);
}

#[test]
fn weak_equivalence_checks_pass() {
    for side in ["sf", "recursive", "identity"] {
        let out = sfcalc(&["check", "weakequiv", side, "--max", "3"]);
        assert_eq!(out.status.code(), Some(0), "{side}: {}", stdout(&out));
    }
}

#[test]
fn prelude_rebinding_warns_and_later_definition_wins() {
    let path = scratch("rebind.prelude", "let id = S K K;\nlet id = K;\n");
    let out = sfcalc(&["--calc", "sk", "--prelude", path.to_str().unwrap(), "reduce", "id x y"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stderr(&out).contains("`id` rebinds an earlier definition"));
    assert_eq!(stdout(&out).trim(), "x");
}

#[test]
fn machine_files_run() {
    let path = scratch("one.tm", "start a\naccept b\nreject c\n\na 1 -> b 1 R\n");
    let out = sfcalc(&["tm", "run", path.to_str().unwrap(), "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("accept after 1 steps"));
    assert_eq!(sfcalc(&["tm", "run", path.to_str().unwrap(), "0"]).status.code(), Some(1));
    let out = sfcalc(&["tm", "run", "equality", "AFF#AFF"]);
    assert!(stdout(&out).starts_with("accept"));
    let out = sfcalc(&["tm", "run", "equality", "AFF#AFS"]);
    assert!(stdout(&out).starts_with("reject"));
}

#[test]
fn seeded_runs_are_reproducible() {
    let a = sfcalc(&["--seed", "7", "demo", "skk-sks"]);
    let b = sfcalc(&["--seed", "7", "demo", "skk-sks"]);
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).contains("seed 7"));
}
