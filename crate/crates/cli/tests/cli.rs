use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

const BIN: &str = env!("CARGO_BIN_EXE_gwt");

fn gwt(args: &[&str], cache: Option<&Path>) -> Output {
    let mut c = Command::new(BIN);
    c.args(args).env_remove("GWT_CACHE_DIR").env_remove("GWT_RELATION_DATA");
    match cache {
        Some(dir) => c.arg("--cache-dir").arg(dir),
        None => c.arg("--no-cache"),
    };
    c.output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

const COMMANDS: &[&[&str]] = &[
    &["e1", "homotopy", "--d", "3", "--smax", "5", "--tmax", "12"],
    &["e1", "homotopy", "--d", "4", "--smax", "4", "--tmax", "10", "--p", "5"],
    &["e1", "homology", "--d", "3", "--smax", "4", "--qmax", "4", "--ring", "Z"],
    &["page", "homology", "--d", "3", "--ring", "Fp:3", "--rmax", "3", "--smax", "4", "--qmax", "6"],
    &["diagrams", "--degree", "3"],
    &["collapse", "--p", "5", "--d", "3", "--r", "2", "--s", "4", "--t", "4"],
    &["collapse", "--p", "5", "--d", "3", "--region", "--n", "7"],
    &["assembly", "--p", "5", "--d", "3", "--n", "6", "--i", "0"],
    &["pi0", "--p", "5", "--n", "4"],
];

#[test]
fn runs_are_byte_identical() {
    for args in COMMANDS {
        let a = gwt(args, None);
        let b = gwt(args, None);
        assert!(a.status.success(), "{args:?}: {}", stderr(&a));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn cached_output_matches_fresh_output() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["diagrams", "--degree", "4", "--verbose"];
    let first = gwt(&args, Some(dir.path()));
    assert!(stderr(&first).contains("cache: miss"), "{}", stderr(&first));
    let second = gwt(&args, Some(dir.path()));
    assert!(stderr(&second).contains("cache: hit"), "{}", stderr(&second));
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(first.stdout, gwt(&args[..3], None).stdout);
}

#[test]
fn corrupt_entries_are_recomputed() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["pi0", "--p", "3", "--n", "3"];
    let good = gwt(&args, Some(dir.path()));
    for e in std::fs::read_dir(dir.path()).unwrap() {
        let p = e.unwrap().path();
        if p.extension().is_some_and(|x| x == "json") {
            std::fs::write(&p, "{ not json").unwrap();
        }
    }
    let again = gwt(&args, Some(dir.path()));
    assert!(again.status.success());
    assert_eq!(good.stdout, again.stdout);
}

#[test]
fn new_relation_data_version_misses() {
    let dir = tempfile::tempdir().unwrap();
    let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/data/stu2_relations.txt");
    let text = std::fs::read_to_string(&data).unwrap();
    let bumped = text.replacen("stu2-v1", "stu2-v1-test", 1);
    assert_ne!(text, bumped);
    let copy = dir.path().join("relations.txt");
    std::fs::write(&copy, bumped).unwrap();
    let cache = dir.path().join("cache");

    let args = ["diagrams", "--degree", "2", "--verbose", "--cache-dir"];
    let run = |env: Option<&Path>| {
        let mut c = Command::new(BIN);
        c.args(args).arg(&cache).env_remove("GWT_CACHE_DIR").env_remove("GWT_RELATION_DATA");
        if let Some(p) = env {
            c.env("GWT_RELATION_DATA", p);
        }
        c.output().unwrap()
    };
    assert!(stderr(&run(None)).contains("cache: miss"));
    assert!(stderr(&run(None)).contains("cache: hit"));
    let other = run(Some(&copy));
    assert!(other.status.success(), "{}", stderr(&other));
    assert!(stderr(&other).contains("cache: miss"), "{}", stderr(&other));
}

#[test]
fn concurrent_runs_agree() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["e1", "homotopy", "--d", "3", "--smax", "5", "--tmax", "20"];
    let outs: Vec<Output> = std::thread::scope(|sc| {
        let hs: Vec<_> = (0..6).map(|_| sc.spawn(|| gwt(&args, Some(dir.path())))).collect();
        hs.into_iter().map(|h| h.join().unwrap()).collect()
    });
    for o in &outs {
        assert!(o.status.success(), "{}", stderr(o));
        assert_eq!(o.stdout, outs[0].stdout);
    }
    let entries = std::fs::read_dir(dir.path())
        .unwrap()
        .filter(|e| e.as_ref().unwrap().path().extension().is_some_and(|x| x == "json"))
        .count();
    assert_eq!(entries, 1);
}

#[test]
fn exit_codes() {
    assert_eq!(gwt(&["pi0", "--p", "5", "--n", "4"], None).status.code(), Some(0));
    // bad input
    assert_eq!(gwt(&["pi0", "--p", "4", "--n", "4"], None).status.code(), Some(2));
    assert_eq!(gwt(&["e1", "homotopy", "--d", "2", "--smax", "3", "--tmax", "3"], None).status.code(), Some(2));
    assert_eq!(gwt(&["diagrams"], None).status.code(), Some(2));
    assert_eq!(gwt(&["page", "homology", "--d", "3", "--ring", "Fp:4", "--rmax", "2", "--smax", "2", "--qmax", "2"], None).status.code(), Some(2));
    // outside a stated hypothesis
    let o = gwt(&["pi0", "--p", "3", "--n", "5"], None);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("bound violated: n ≤ p+1 = 4"), "{}", stderr(&o));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["result"]["valid"], false);
    let o = gwt(&["collapse", "--p", "2", "--d", "3", "--region", "--n", "5"], None);
    assert_eq!(o.status.code(), Some(3));
    let o = gwt(&["diagrams", "--degree", "9"], None);
    assert_eq!(o.status.code(), Some(3), "{}", stderr(&o));
}

#[test]
fn outputs_match_schema() {
    let schema_path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../docs/output.schema.json");
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(schema_path).unwrap()).unwrap();
    let validator = jsonschema::validator_for(&schema).unwrap();
    let mut extra: Vec<&[&str]> = COMMANDS.to_vec();
    extra.push(&["pi0", "--p", "3", "--n", "5"]);
    extra.push(&["diagrams", "--degree", "2", "--relations", "as,ihx", "--generators"]);
    for args in extra {
        let o = gwt(args, None);
        let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
        let errs: Vec<String> = validator.iter_errors(&v).map(|e| e.to_string()).collect();
        assert!(errs.is_empty(), "{args:?}: {errs:?}");
    }
}

#[test]
fn table_agrees_with_json() {
    let args = ["e1", "homotopy", "--d", "3", "--smax", "5", "--tmax", "12"];
    let json: Value = serde_json::from_str(&stdout(&gwt(&args, None))).unwrap();
    let mut targs = args.to_vec();
    targs.push("--table");
    let table = stdout(&gwt(&targs, None));
    let mut rows = Vec::new();
    let body = table.lines().skip_while(|l| *l != "# result");
    for line in body.filter(|l| !l.starts_with('#')) {
        let cells: Vec<&str> = line.split_whitespace().collect();
        if cells.first() == Some(&"s") {
            continue;
        }
        rows.push((cells[0].to_string(), cells[1].to_string(), cells[2].to_string()));
    }
    let want: Vec<(String, String, String)> = json["result"]["entries"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|e| e["rank"].as_u64() != Some(0))
        .map(|e| (e["s"].to_string(), e["t"].to_string(), e["rank"].to_string()))
        .collect();
    assert!(!want.is_empty());
    assert_eq!(rows, want);
}
