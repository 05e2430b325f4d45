use std::path::PathBuf;
use std::process::{Command, Output};

use tempfile::TempDir;

fn pfree(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pfree"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const P4: &str = "p pfree 4 3\nv 1 1\nv 2 3\nv 3 3\nv 4 1\ne 1 2\ne 2 3\ne 3 4\n";
const C4: &str = "p pfree 4 4\ne 1 2\ne 2 3\ne 3 4\ne 4 1\n";

#[test]
fn weighted_p4_json_record() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "p4.txt", P4);
    let o = pfree(&["solve-mwis", f.to_str().unwrap(), "--json"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 1);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["status"], "optimal");
    assert_eq!(v["weight"], 4);
    assert_eq!(v["problem"], "mwis");
    let sol: Vec<u64> = v["solution"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_u64().unwrap())
        .collect();
    assert!(sol == vec![1, 3] || sol == vec![2, 4], "{sol:?}");
}

#[test]
fn plain_and_json_carry_the_same_data() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "p4.txt", P4);
    let plain = stdout(&pfree(&["solve-eds", f.to_str().unwrap()]));
    let json: serde_json::Value =
        serde_json::from_str(&stdout(&pfree(&["solve-eds", f.to_str().unwrap(), "--json"]))).unwrap();
    let field = |k: &str| {
        plain
            .lines()
            .find_map(|l| l.strip_prefix(&format!("{k} ")))
            .unwrap()
            .to_string()
    };
    assert_eq!(field("status"), json["status"].as_str().unwrap());
    assert_eq!(field("weight"), json["weight"].to_string());
    let stats: serde_json::Value = serde_json::from_str(&field("stats")).unwrap();
    assert_eq!(stats, json["stats"]);
}

#[test]
fn c4_has_no_efficient_dominating_set() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "c4.txt", C4);
    let o = pfree(&["solve-eds", f.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("status no-solution"));
}

#[test]
fn check_reports_witness_path() {
    let dir = TempDir::new().unwrap();
    let f = write(
        &dir,
        "p7.txt",
        "p pfree 7 6\ne 1 2\ne 2 3\ne 3 4\ne 4 5\ne 5 6\ne 6 7\n",
    );
    let o = pfree(&["check", f.to_str().unwrap(), "--forbid", "7"]);
    assert_eq!(o.status.code(), Some(1));
    let line = stdout(&o);
    let ids: Vec<&str> = line.trim().split(": ").nth(1).unwrap().split(' ').collect();
    assert_eq!(ids.len(), 7);
    let o = pfree(&["check", f.to_str().unwrap(), "--forbid", "8"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn exit_codes_by_error_class() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.txt", "p pfree 2 1\ne 1 1\n");
    assert_eq!(pfree(&["solve-mwis", bad.to_str().unwrap()]).status.code(), Some(2));
    let o = pfree(&["solve-mwis", bad.to_str().unwrap(), "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["status"], "parse-error");

    let big = dir.path().join("big.txt");
    let g = pfree(&[
        "gen",
        "--family",
        "blowup",
        "--n",
        "30",
        "--seed",
        "1",
        "-o",
        big.to_str().unwrap(),
    ]);
    assert!(g.status.success());
    let o = pfree(&["solve-mwis", big.to_str().unwrap(), "--budget", "1"]);
    assert_eq!(o.status.code(), Some(3));

    let mut c10 = String::from("p pfree 10 10\n");
    for i in 1..=10 {
        c10.push_str(&format!("e {} {}\n", i, i % 10 + 1));
    }
    let c10 = write(&dir, "c10.txt", &c10);
    assert_eq!(pfree(&["solve-eds", c10.to_str().unwrap()]).status.code(), Some(4));
    let o = pfree(&["solve-eds", c10.to_str().unwrap(), "--mode", "fallback"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("status no-solution"));

    let o = pfree(&[
        "gen",
        "--family",
        "random-pkfree",
        "--n",
        "30",
        "--k",
        "2",
        "--max-repair",
        "0",
        "--seed",
        "1",
    ]);
    assert_eq!(o.status.code(), Some(5));
}

#[test]
fn generator_is_seeded_and_round_trips() {
    let dir = TempDir::new().unwrap();
    let a = pfree(&[
        "gen",
        "--family",
        "cograph",
        "--n",
        "12",
        "--seed",
        "9",
        "--weights",
        "1,5",
    ]);
    let b = pfree(&[
        "gen",
        "--family",
        "cograph",
        "--n",
        "12",
        "--seed",
        "9",
        "--weights",
        "1,5",
    ]);
    assert_eq!(a.stdout, b.stdout);
    let f = write(&dir, "g.txt", &stdout(&a));
    let o = pfree(&["oracle", "mwis", f.to_str().unwrap()]);
    let oracle: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let solved: serde_json::Value =
        serde_json::from_str(&stdout(&pfree(&["solve-mwis", f.to_str().unwrap(), "--json"]))).unwrap();
    assert_eq!(oracle["weight"], solved["weight"]);
}

#[test]
fn triangulate_prints_bags_and_central_bag() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "c4.txt", C4);
    let out = stdout(&pfree(&["triangulate", f.to_str().unwrap()]));
    assert!(out.contains("fill 1"));
    assert!(out.contains("bags 2"));
    assert!(out.lines().any(|l| l.starts_with("central ")));
}

#[test]
fn verify_counterexamples_reports_each_claim() {
    let o = pfree(&[
        "verify",
        "--theorem",
        "counterexamples",
        "--k-nuke",
        "10",
        "--k-sep",
        "3",
        "--budget",
        "1000",
    ]);
    let out = stdout(&o);
    assert!(out.contains("nuke.is_nuke verified"));
    assert!(out.contains("sep.is_minimal_separator verified"));
    assert!(out.contains("nuke.p7_free skipped"));
    assert!(o.status.success());
}

#[test]
fn verify_hit_sep_enumerates_separators() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "c4.txt", C4);
    let o = pfree(&[
        "verify",
        "--theorem",
        "hit-sep",
        f.to_str().unwrap(),
        "--measure",
        "adversarial",
    ]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("targets 2 all_satisfied true"));
}
