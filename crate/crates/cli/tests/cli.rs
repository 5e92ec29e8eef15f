use std::path::PathBuf;
use std::process::Command;

use clap::Parser;

use hhstring_cli::{run, Cli, Outcome, Report, EXIT_INVALID, EXIT_OK, EXIT_PARSE};

fn data(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("tests/data");
    p.push(name);
    p.to_string_lossy().into_owned()
}

fn hhstring(args: &[&str]) -> Outcome {
    let argv = std::iter::once("hhstring").chain(args.iter().copied());
    run(Cli::try_parse_from(argv).expect("arguments parse"))
}

fn first_line(o: &Outcome) -> &str {
    o.stdout.lines().next().unwrap_or("")
}

fn report(o: &Outcome) -> Report {
    serde_json::from_str(&o.stdout).expect("stdout is a report")
}

#[test]
fn double_line_tables() {
    let expected = [
        ("a1.txt", "HH: 1 3 0"),
        ("a2.txt", "HH: 1 2 0 0"),
        ("a3.txt", "HH: 1 3 0 2 0"),
        ("a4.txt", "HH: 1 4 0 0 0 0"),
        ("a5.txt", "HH: 1 5 0 0 0 2 0"),
    ];
    for (file, line) in expected {
        let out = hhstring(&["hh", &data(file)]);
        assert_eq!(out.code, EXIT_OK, "{file}: {}", out.stderr);
        assert_eq!(first_line(&out), line, "{file}");
    }
}

#[test]
fn every_method_gives_the_same_line() {
    for method in ["formula", "matrix", "both"] {
        let out = hhstring(&["hh", "--method", method, &data("a5.txt")]);
        assert_eq!(first_line(&out), "HH: 1 5 0 0 0 2 0", "{method}");
    }
}

#[test]
fn max_degree_truncates() {
    let out = hhstring(&["hh", "--max-degree", "2", &data("a5.txt")]);
    assert_eq!(first_line(&out), "HH: 1 5 0");
}

#[test]
fn json_hh_has_agree_flags() {
    let out = hhstring(&["hh", "--json", &data("a4.txt")]);
    assert_eq!(out.code, EXIT_OK);
    let r = report(&out);
    let hh = r.hh.expect("hh computed");
    assert_eq!(hh.dims, vec![1, 4, 0, 0, 0, 0]);
    assert!(hh.degrees.iter().all(|d| d.agree == Some(true)));
    assert!(r.cup.is_none());
    assert!(r.properties.is_none());
    assert!(r.timing.is_none());
}

#[test]
fn json_has_fixed_top_level_keys() {
    let out = hhstring(&["hh", "--json", &data("a3.txt")]);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    for k in ["presentation", "validation", "ap", "hh", "cup", "properties"] {
        assert!(keys.contains(&k), "missing {k}");
    }
    assert!(!keys.contains(&"timing"));
    assert!(v["cup"].is_null());
}

#[test]
fn json_round_trips() {
    for args in [
        vec!["hh", "--json"],
        vec!["cup", "--json"],
        vec!["check", "--json"],
        vec!["ap", "--json"],
    ] {
        let mut args = args.clone();
        let file = data("a3.txt");
        args.push(&file);
        let out = hhstring(&args);
        let r = report(&out);
        let again = serde_json::to_string_pretty(&r).unwrap() + "\n";
        assert_eq!(again, out.stdout, "{args:?}");
    }
}

#[test]
fn json_is_byte_identical_across_runs() {
    let a = hhstring(&["check", "--json", &data("a5.txt")]);
    let b = hhstring(&["check", "--json", &data("a5.txt")]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn timing_is_opt_in() {
    let out = hhstring(&["hh", "--json", "--timing", &data("a2.txt")]);
    assert!(report(&out).timing.is_some());
}

#[test]
fn validate_exit_codes() {
    assert_eq!(hhstring(&["validate", &data("a3.txt")]).code, EXIT_OK);

    let s2 = hhstring(&["validate", &data("s2_violation.txt")]);
    assert_eq!(s2.code, EXIT_INVALID);
    assert!(s2.stdout.contains("[FAIL] S2: arrow `a`"), "{}", s2.stdout);

    let s1 = hhstring(&["validate", &data("s1_violation.txt")]);
    assert_eq!(s1.code, EXIT_INVALID);

    let bad = hhstring(&["validate", &data("malformed.txt")]);
    assert_eq!(bad.code, EXIT_PARSE);
    assert!(bad.stderr.contains("line 3"), "{}", bad.stderr);

    let missing = hhstring(&["validate", &data("no_such_file.txt")]);
    assert_eq!(missing.code, EXIT_PARSE);
}

#[test]
fn validation_runs_before_audits() {
    let out = hhstring(&["check", &data("non_minimal.txt")]);
    assert_eq!(out.code, EXIT_INVALID);
    assert!(out.stdout.contains("[FAIL] minimal-relations"));
    assert!(!out.stdout.contains("d^2 = 0"));
    let json = hhstring(&["check", "--json", &data("non_minimal.txt")]);
    let r = report(&json);
    assert!(r.properties.is_none() && r.hh.is_none());
}

#[test]
fn ap_listing() {
    let out = hhstring(&["ap", &data("a3.txt")]);
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stdout.contains("degree 2: 4 supports"));
    assert!(out.stdout.contains("degree 3: 2 supports"));
    assert!(out.stdout.contains("degree 4: 0 supports"));

    let one = hhstring(&["ap", "--json", &data("a1.txt")]);
    let listing = report(&one).ap.unwrap();
    assert!(listing.dual_agrees);
    assert!(listing.degrees.iter().filter(|d| d.degree >= 2).all(|d| d.count == 0));
    for d in &listing.degrees {
        assert_eq!(d.chains, d.op_chains);
    }
}

#[test]
fn cup_messages() {
    let out = hhstring(&["cup", &data("a3.txt")]);
    assert_eq!(out.code, EXIT_OK);
    assert!(first_line(&out).starts_with("all cup products vanish (pairs checked: "));

    let tree = hhstring(&["cup", &data("tree.txt")]);
    assert_eq!(tree.code, EXIT_OK);
    assert_eq!(first_line(&tree), "no positive-degree classes");
}

#[test]
fn check_passes_on_double_lines() {
    for file in ["a1.txt", "a2.txt", "a3.txt", "a4.txt"] {
        let out = hhstring(&["check", &data(file)]);
        assert_eq!(out.code, EXIT_OK, "{file}\n{}", out.stdout);
        assert!(out.stdout.lines().all(|l| l.starts_with("[pass]")));
    }
}

#[test]
fn gen_is_deterministic_and_valid() {
    let a = hhstring(&["gen", "--seed", "7", "--vertices", "6"]);
    let b = hhstring(&["gen", "--seed", "7", "--vertices", "6"]);
    assert_eq!(a.stdout, b.stdout);
    let p = hhstring::parse(&a.stdout).unwrap();
    assert!(p.validate().overall);

    let tree = hhstring(&["gen", "--seed", "3", "--vertices", "5", "--tree"]);
    let p = hhstring::parse(&tree.stdout).unwrap();
    assert_eq!(p.quiver().num_arrows(), 4);

    let quad = hhstring(&["gen", "--seed", "3", "--vertices", "6", "--quadratic"]);
    let p = hhstring::parse(&quad.stdout).unwrap();
    assert!(p.relations().iter().all(|r| r.len() == 2));
}

#[test]
fn binary_reports_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_hhstring");
    let status = |args: &[&str]| Command::new(bin).args(args).output().unwrap();

    let ok = status(&["hh", &data("a1.txt")]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&ok.stdout).starts_with("HH: 1 3 0\n"));

    assert_eq!(status(&["validate", &data("s2_violation.txt")]).status.code(), Some(1));
    let parse = status(&["validate", &data("malformed.txt")]);
    assert_eq!(parse.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&parse.stderr).contains("line 3"));
}
