use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use smoothq_cli::records::{read_csv, write_csv, SimRow, SweepRow, TableRow};

fn smoothq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_smoothq"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn write_input(dir: &Path, name: &str, body: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, body).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn estimate_examples() {
    let dir = tempfile::tempdir().unwrap();
    let three = write_input(dir.path(), "three.txt", "1\n2\n3\n");
    let out = smoothq(&["estimate", &three, "--z", "0", "--h", "0"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "q_hat,z,h,n\n2,0,0,3\n");

    let four = write_input(dir.path(), "four.txt", "0\n\n1\n2\n3\n");
    let out = smoothq(&["estimate", &four, "--h", "1", "--format", "json"]);
    assert!(out.status.success());
    let rows: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(rows[0]["q_hat"], 1.5);
    assert_eq!(rows[0]["n"], 4);
}

#[test]
fn estimate_errors() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write_input(dir.path(), "bad.txt", "1\n2\nabc\n");
    let out = smoothq(&["estimate", &bad]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));

    let good = write_input(dir.path(), "good.txt", "1\n2\n");
    let out = smoothq(&["estimate", &good, "--z", "1", "--h", "0"]);
    assert_eq!(out.status.code(), Some(2));
    let out = smoothq(&["estimate", &good, "--h", "-1"]);
    assert_eq!(out.status.code(), Some(2));

    let missing = dir.path().join("missing.txt");
    let out = smoothq(&["estimate", missing.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));

    let empty = write_input(dir.path(), "empty.txt", "\n\n");
    assert_eq!(smoothq(&["estimate", &empty]).status.code(), Some(2));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["table", "--dist", "gamma:1,1"],
        vec!["table", "--dist", "normal:0,1", "--tau", "1.5"],
        vec!["sweep", "--dist", "laplace:0,1", "0.9", "0.1", "0.05"],
        vec!["sweep", "--dist", "laplace:0,1", "0.1", "0.9", "0"],
        vec!["simulate", "--dist", "normal:0,1", "--tau", "0.5", "--reps", "1", "--seed", "1"],
        vec!["simulate", "--dist", "normal:0,1", "--tau", "0.5"],
        vec!["simulate", "--dist", "normal:0,1", "--seed", "1"],
        vec!["population", "--dist", "normal:0,1", "--z", "1"],
        vec!["variance", "--dist", "normal:0,1", "--tau", "0"],
        vec!["bogus"],
    ] {
        let out = smoothq(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn unwritable_output_exits_one() {
    let out = smoothq(&["table", "--dist", "normal:0,1", "--out", "/nonexistent-dir/x.csv"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.csv");
    let out = smoothq(&["table", "--dist", "laplace:0,1", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let body = fs::read_to_string(path).unwrap();
    assert_eq!(body, include_str!("golden/table_laplace.csv"));
}

fn golden_round_trip<T>(body: &str)
where
    T: serde::de::DeserializeOwned + serde::Serialize,
{
    let rows: Vec<T> = read_csv(body.as_bytes()).unwrap();
    let mut again = Vec::new();
    write_csv(&rows, &mut again).unwrap();
    assert_eq!(String::from_utf8(again).unwrap(), body);
}

#[test]
fn golden_tables() {
    let normal = include_str!("golden/table_normal.csv");
    let laplace = include_str!("golden/table_laplace.csv");
    let sweep = include_str!("golden/sweep_laplace.csv");
    assert_eq!(stdout(&smoothq(&["table", "--dist", "normal:0,1"])), normal);
    assert_eq!(stdout(&smoothq(&["table", "--dist", "laplace:0,1", "--tau", "0.25,0.5,0.75"])), laplace);
    assert_eq!(stdout(&smoothq(&["sweep", "--dist", "laplace:0,1", "0.05", "0.95", "0.05"])), sweep);
    golden_round_trip::<TableRow>(normal);
    golden_round_trip::<TableRow>(laplace);
    golden_round_trip::<SweepRow>(sweep);

    let rows: Vec<TableRow> = read_csv(normal.as_bytes()).unwrap();
    assert!(rows.iter().all(|r| r.case == "decreasing" && r.limit));
}

#[test]
fn sweep_single_point_and_normal_limit_flags() {
    let out = smoothq(&["sweep", "--dist", "normal:0,1", "0.5", "0.5", "0.05"]);
    let rows: Vec<SweepRow> = read_csv(out.stdout.as_slice()).unwrap();
    assert_eq!(rows.len(), 1);

    let out = smoothq(&["sweep", "--dist", "normal:0,1", "--format", "json"]);
    let rows: Vec<SweepRow> = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(rows.len(), 19);
    let n = smoothq::Distribution::standard_normal();
    for r in &rows {
        assert!(r.limit && r.ratio < 1.0);
        let v0 = smoothq::asymptotics::v(&n, r.tau, 0.0).unwrap();
        assert!((r.ratio - 1.0 / v0).abs() < 1e-12);
    }
}

#[test]
fn simulate_is_deterministic_and_within_gate() {
    let args = [
        "simulate", "--dist", "normal:0,1", "--tau", "0.5", "--h", "0", "--n", "2000", "--reps", "2000",
        "--seed", "42",
    ];
    let first = smoothq(&args);
    let second = smoothq(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
    let rows: Vec<SimRow> = read_csv(first.stdout.as_slice()).unwrap();
    assert!(rows[0].relative_error <= 0.10, "{:?}", rows[0]);
    assert_eq!(rows[0].tau, Some(0.5));

    let mut json_args = args.to_vec();
    json_args.extend(["--format", "json"]);
    let json: Vec<SimRow> = serde_json::from_slice(&smoothq(&json_args).stdout).unwrap();
    // CSV carries 6 significant digits, JSON full precision.
    assert!((json[0].scaled_variance - rows[0].scaled_variance).abs() <= 1e-5 * rows[0].scaled_variance);
}

#[test]
fn population_and_variance_commands() {
    let out = smoothq(&["population", "--dist", "normal:0,1", "--z", "0", "--h", "5", "--format", "json"]);
    let rows: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(rows[0]["q"].as_f64().unwrap().abs() < 1e-12);

    let out = smoothq(&["variance", "--dist", "laplace:0,1", "--tau", "0.75", "--h", "0", "--format", "json"]);
    let rows: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!((rows[0]["v"].as_f64().unwrap() - 3.0).abs() < 1e-12);
}
