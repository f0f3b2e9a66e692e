use std::collections::BTreeSet;

use clap::CommandFactory;
use serde_json::Value;
use taukit_cli::args::Cli;
use taukit_cli::commands::ROUTES;
use taukit_cli::{digest, run, EXIT_OK, EXIT_USAGE, EXIT_VERIFY};

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("taukit").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(args: &[&str]) -> Value {
    let (code, out, err) = call(args);
    assert_eq!(code, EXIT_OK, "{args:?}: {err}");
    serde_json::from_str(&out).unwrap()
}

fn leaves(cmd: &clap::Command, prefix: &str, acc: &mut BTreeSet<String>) {
    for sub in cmd.get_subcommands().filter(|s| s.get_name() != "help") {
        let path = if prefix.is_empty() {
            sub.get_name().to_string()
        } else {
            format!("{prefix} {}", sub.get_name())
        };
        if sub.has_subcommands() {
            leaves(sub, &path, acc);
        } else {
            acc.insert(path);
        }
    }
}

#[test]
fn every_operation_routes_to_one_subcommand() {
    let mut seen = BTreeSet::new();
    for (op, _) in ROUTES {
        assert!(seen.insert(*op), "{op} routed twice");
    }
    let mut all = BTreeSet::new();
    leaves(&Cli::command(), "", &mut all);
    let routed: BTreeSet<String> = ROUTES.iter().map(|(_, p)| p.to_string()).collect();
    assert_eq!(routed, all, "routes and subcommands differ");
    for path in &all {
        let mut args: Vec<&str> = path.split(' ').collect();
        args.push("--help");
        let (code, out, _) = call(&args);
        assert_eq!(code, EXIT_OK, "{path}");
        assert!(out.contains("Usage"), "{path}");
    }
}

#[test]
fn exponential_partial_sums() {
    let v = json(&["hyper", "pfs", "--a", "", "--b", "", "--x", "1", "--deg", "5"]);
    let graded: Vec<&str> = v["graded"].as_array().unwrap().iter().map(|x| x.as_str().unwrap()).collect();
    assert_eq!(graded, ["1", "1", "1/2", "1/6", "1/24", "1/120"]);
}

#[test]
fn cauchy_exits_zero() {
    let (code, out, _) = call(&["verify", "cauchy", "--deg", "10"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("\"agrees\": true"));
}

#[test]
fn linear_tau_row_four_term() {
    let v = json(&["tau", "--r", "linear", "--n", "1", "--t", "t:4", "--tstar", "t:4", "--deg", "4"]);
    let terms = v["terms"].as_array().unwrap();
    let lambdas: Vec<&str> = terms.iter().map(|t| t["lambda"].as_str().unwrap()).collect();
    assert_eq!(lambdas, ["[]", "[1]", "[2]", "[3]", "[4]"]);
    let four = terms.iter().find(|t| t["lambda"] == "[4]").unwrap();
    assert_eq!(four["coeff"], "24");
    let expanded = v["expanded"].as_array().unwrap();
    let get = |m: &str| expanded.iter().find(|e| e["monomial"] == m).map(|e| e["coeff"].clone());
    assert_eq!(get("t4*s4"), Some(Value::from("24")));
    assert_eq!(get("t4*s2^2"), Some(Value::from("12")));
}

#[test]
fn poisoned_hirota_exits_one_with_counterexample() {
    let (code, out, err) = call(&["verify", "all", "--poison", "hirota"]);
    assert_eq!(code, EXIT_VERIFY);
    assert!(err.contains("verification failed"));
    let v: Value = serde_json::from_str(&out).unwrap();
    let residuals = v["criteria"].as_array().unwrap().iter().find(|c| c["name"] == "residuals").unwrap();
    assert_eq!(residuals["passed"], false);
    assert!(!residuals["counterexample"].is_null());
}

#[test]
fn bad_input_exits_two() {
    for args in [
        vec!["bogus"],
        vec!["tau", "--r", "nonsense", "--t", "t:2", "--tstar", "t:2", "--deg", "2"],
        vec!["partition", "show", "--lambda", "1,3"],
        vec!["verify", "all", "--poison", "nothing"],
        vec!["verify", "criterion", "no-such"],
        vec!["--threads", "0", "verify", "cauchy", "--deg", "2"],
    ] {
        let (code, _, err) = call(&args);
        assert_eq!(code, EXIT_USAGE, "{args:?}");
        assert!(!err.is_empty());
    }
}

#[test]
fn output_is_independent_of_thread_count() {
    let base = ["oracle", "haar", "--a", "1,1/2", "--b", "1,1/3", "--samples", "4000", "--chunks", "8"];
    let one = call(&[&["--threads", "1"][..], &base[..]].concat());
    let four = call(&[&["--threads", "4"][..], &base[..]].concat());
    assert_eq!(one.1, four.1);
    let a = call(&["--threads", "1", "tau", "--r", "one", "--t", "t:5", "--tstar", "t:5", "--deg", "5"]);
    let b = call(&["--threads", "3", "tau", "--r", "one", "--t", "t:5", "--tstar", "t:5", "--deg", "5"]);
    assert_eq!(a, b);
}

#[test]
fn manifest_records_output_digest() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("m.json");
    let p = path.to_str().unwrap();
    let (code, out, _) = call(&["--manifest", p, "fock", "trace", "--r", "one", "--deg", "4"]);
    assert_eq!(code, EXIT_OK);
    let m: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(m["output_sha256"], digest(out.as_bytes()));
    assert_eq!(m["version"], env!("CARGO_PKG_VERSION"));
    assert!(m["wall_seconds"].as_f64().unwrap() >= 0.0);
    let (_, again, _) = call(&["--manifest", p, "fock", "trace", "--r", "one", "--deg", "4"]);
    assert_eq!(again, out);
}

#[test]
fn csv_tables() {
    let (code, out, _) = call(&["--format", "csv", "partition", "list", "--weight", "3"]);
    assert_eq!(code, EXIT_OK);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "lambda,weight");
    assert_eq!(lines[1..5], ["[],0", "[1],1", "[2],2", "\"[1,1]\",2"]);
    let (_, out, _) = call(&["--format", "csv", "weights", "--r", "linear", "--n", "2", "--lambda", "2"]);
    assert!(out.starts_with("path,value\n"));
    assert!(out.contains("content_product,6\n"));
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_taukit");
    let ok = std::process::Command::new(bin).args(["verify", "cauchy", "--deg", "6"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(EXIT_OK));
    let bad = std::process::Command::new(bin).args(["tau"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(EXIT_USAGE));
}
