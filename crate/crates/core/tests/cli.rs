use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

const R4: &str =
    "(12+21)(34+43)+(13+31)(24+42)+(23+32)(14+41)+(14+41)(23+32)+(24+42)(13+31)+(34+43)(12+21)";

fn permrex(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_permrex"))
        .args(args)
        .env_remove("PERMREX_PRECISION_BITS")
        .output()
        .expect("spawn permrex")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

#[test]
fn table_csv() {
    let o = permrex(&["table", "--max-n", "4", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "n,f,t,listing\n1,1,1,1\n2,4,4,4\n3,15,15,18\n4,48,64,96\n"
    );
}

#[test]
fn gen_r4() {
    let o = permrex(&["gen", "dnc", "--n", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), R4);
}

#[test]
fn oracle_n3() {
    let o = permrex(&["oracle", "--n", "3", "--k", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["command"], "oracle");
    assert_eq!(v["report"]["cost_Pn"], 15);
    assert_eq!(v["report"]["matches_f"], true);
    assert_eq!(v["report"]["query"]["ell"], 5);
    assert!(v["metadata"]["elapsed_ms"].is_u64());
}

#[test]
fn oracle_refuses_large_n() {
    assert_eq!(permrex(&["oracle", "--n", "4"]).status.code(), Some(2));
}

#[test]
fn generated_file_verifies() {
    let dir = tempfile::tempdir().unwrap();
    for (builder, n) in [("dnc", "5"), ("tail", "4"), ("flat", "3")] {
        let file = dir.path().join(format!("{builder}.re"));
        let o = permrex(&["gen", builder, "--n", n, "--output", file.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
        assert!(o.stdout.is_empty());
        let o = permrex(&["verify", "--regex-file", file.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0), "{builder}");
        let v = json(&o);
        assert_eq!(v["report"]["certificate"]["passed"], true);
        assert_eq!(v["report"]["certificate"]["n"], n.parse::<u64>().unwrap());
    }
}

#[test]
fn wrong_language_exits_1() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("bad.re");
    std::fs::write(&file, "(12+21)3").unwrap();
    let o = permrex(&["verify", "--regex-file", file.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["report"]["certificate"]["passed"], false);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(permrex(&[]).status.code(), Some(2));
    assert_eq!(permrex(&["gen", "dnc"]).status.code(), Some(2));
    assert_eq!(permrex(&["table", "--max-n", "0"]).status.code(), Some(2));
    assert_eq!(
        permrex(&["verify", "--regex-file", "/nonexistent/x.re"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        permrex(&["estimate", "--max-m", "11"]).status.code(),
        Some(2)
    );
    assert_eq!(
        permrex(&["lemmas", "--max-n", "600"]).status.code(),
        Some(2)
    );
}

fn report_of(o: &Output) -> Value {
    json(o)["report"].clone()
}

#[test]
fn reports_are_deterministic() {
    let args = ["estimate", "--max-m", "5"];
    let a = permrex(&args);
    let b = permrex(&args);
    assert_eq!(report_of(&a), report_of(&b));
    let args = ["lemmas", "--max-n", "40"];
    assert_eq!(report_of(&permrex(&args)), report_of(&permrex(&args)));
}

#[test]
fn precision_from_environment() {
    let run = |bits: &str| {
        Command::new(env!("CARGO_BIN_EXE_permrex"))
            .args(["estimate", "--max-m", "3"])
            .env("PERMREX_PRECISION_BITS", bits)
            .output()
            .unwrap()
    };
    let o = run("300");
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(report_of(&o)["rows"].as_array().unwrap().len(), 3);
    assert_eq!(run("banana").status.code(), Some(2));
    assert_eq!(run("5").status.code(), Some(2));
}

#[test]
fn bounds_small_run_passes() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("bounds.json");
    let o = permrex(&[
        "bounds",
        "--max-n",
        "64",
        "--stirling-max-n",
        "20",
        "--grid",
        "1:1:20",
        "--output",
        file.to_str().unwrap(),
    ]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let v: Value =
        serde_json::from_str(&std::fs::read_to_string(Path::new(&file)).unwrap()).unwrap();
    assert_eq!(v["report"]["passed"], true);
    assert!(v["report"]["failure"].is_null());
    assert_eq!(v["report"]["precision_bits"], 200);
}

#[test]
fn len_csv_matches_predictions() {
    let o = permrex(&["len", "--max-n", "6", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().count() > 6);
}
