use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn sgap(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sgap")).args(args).current_dir(dir).output().expect("sgap runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn report_without_timestamp(path: &Path) -> Value {
    let mut v: Value = serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap();
    v["manifest"].as_object_mut().unwrap().remove("timestamp_unix");
    v
}

#[test]
fn dict_write_and_inspect_agree() {
    let dir = tempfile::tempdir().unwrap();
    let built = sgap(&["dict", "--kind", "spikes-sines", "--m", "16", "--out", "d.sgdict"], dir.path());
    assert_eq!(built.status.code(), Some(0));
    assert!(stdout(&built).contains("mu = 0.25\n"));
    assert!(dir.path().join("d.sgdict.bin").exists());
    let inspected = sgap(&["dict", "--inspect", "d.sgdict"], dir.path());
    assert_eq!(stdout(&built), stdout(&inspected));
}

#[test]
fn dict_usage_errors() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(sgap(&["dict", "--kind", "spikes-sines", "--m", "1"], dir.path()).status.code(), Some(2));
    assert_eq!(sgap(&["dict", "--kind", "nope", "--m", "4"], dir.path()).status.code(), Some(2));
    assert_eq!(sgap(&["dict", "--inspect", "missing.sgdict"], dir.path()).status.code(), Some(2));
}

#[test]
fn bounds_sweep_csv_and_json_agree() {
    let dir = tempfile::tempdir().unwrap();
    let csv = sgap(&["bounds", "--s", "1..=16", "--mu", "0.125"], dir.path());
    assert_eq!(csv.status.code(), Some(0));
    let mut reader = csv::Reader::from_reader(csv.stdout.as_slice());
    let headers = reader.headers().unwrap().clone();
    let rows: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 16);
    let col = |name: &str| headers.iter().position(|h| h == name).unwrap();
    assert_eq!(&rows[0][col("generic_up_rhs")], "8");
    assert_eq!(&rows[0][col("donoho_elad_rhs")], "8");

    let json = sgap(&["bounds", "--s", "1..=16", "--mu", "0.125", "--format", "json"], dir.path());
    let v: Value = serde_json::from_slice(&json.stdout).unwrap();
    let json_rows = v["report"]["rows"].as_array().unwrap();
    for (r, j) in rows.iter().zip(json_rows) {
        for name in ["strong_gap_rhs", "overlap_rhs", "t_threshold", "generic_up_rhs"] {
            let from_csv: Option<f64> = r[col(name)].parse().ok();
            assert_eq!(from_csv, j[name].as_f64(), "{name}");
        }
    }
}

#[test]
fn bounds_marks_bad_rows() {
    let dir = tempfile::tempdir().unwrap();
    let out = sgap(&["bounds", "--s", "3", "--t", "3", "--delta", "0,4", "--mu", "0.1"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 3);
    assert!(text.lines().nth(2).unwrap().contains("overlap 4 exceeds"));
}

const GAP_ARGS: [&str; 17] = [
    "experiment", "--experiment", "gap", "--kind", "spikes-sines", "--m", "16", "--s", "3", "--t", "3", "--pairs", "4",
    "--trials", "5", "--seed", "17",
];

#[test]
fn experiment_reruns_are_identical() {
    let dir = tempfile::tempdir().unwrap();
    for out in ["a", "b"] {
        let mut args = GAP_ARGS.to_vec();
        args.extend(["--out", out]);
        assert_eq!(sgap(&args, dir.path()).status.code(), Some(0));
    }
    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    assert_eq!(fs::read(a.join("gap.csv")).unwrap(), fs::read(b.join("gap.csv")).unwrap());
    let (ja, mut jb) = (report_without_timestamp(&a.join("gap.json")), report_without_timestamp(&b.join("gap.json")));
    // only the output directory differs in the command line
    jb["manifest"]["command_line"] = ja["manifest"]["command_line"].clone();
    assert_eq!(ja, jb);
    assert_eq!(ja["manifest"]["master_seed"], 17);
}

#[test]
fn replay_reproduces_and_detects_tampering() {
    let dir = tempfile::tempdir().unwrap();
    let mut args = GAP_ARGS.to_vec();
    args.extend(["--out", "r"]);
    sgap(&args, dir.path());
    let ok = sgap(&["experiment", "--replay", "r/gap.json"], dir.path());
    assert_eq!(ok.status.code(), Some(0), "{}", stdout(&ok));
    assert!(stdout(&ok).contains("payload identical"));

    let path = dir.path().join("r/gap.json");
    let mut v: Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    v["manifest"]["payload_sha256"] = Value::String("0".repeat(64));
    fs::write(&path, serde_json::to_string(&v).unwrap()).unwrap();
    let bad = sgap(&["experiment", "--replay", "r/gap.json"], dir.path());
    assert_eq!(bad.status.code(), Some(1));
    assert!(stdout(&bad).contains("DIFFERS"));
}

#[test]
fn inconclusive_verdicts_exit_one() {
    // every residual lies in [0, 1], inside this band
    let dir = tempfile::tempdir().unwrap();
    let mut args = GAP_ARGS.to_vec();
    args.extend(["--ceiling", "0", "--floor", "10", "--out", "r"]);
    let out = sgap(&args, dir.path());
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("[VIOLATION]"));
    assert!(dir.path().join("r/gap.json").exists());
}

#[test]
fn config_errors_exit_two_before_running() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(
        dir.path().join("bad.json"),
        r#"{"runs": [
            {"experiment": "sweep", "dictionary": {"kind": "identity", "m": 4}, "seed": 1, "s_values": [1], "trials_per_s": 2},
            {"experiment": "teleport", "seed": 1}
        ]}"#,
    )
    .unwrap();
    let out = sgap(&["experiment", "--config", "bad.json", "--out", "r"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("teleport"));
    assert!(!dir.path().join("r").exists());

    fs::write(
        dir.path().join("typo.json"),
        r#"{"experiment": "weak-rank", "dictionary": {"kind": "identity", "m": 4}, "seed": 1, "s": 1, "v_size": 1, "trails": 3}"#,
    )
    .unwrap();
    assert_eq!(sgap(&["experiment", "--config", "typo.json"], dir.path()).status.code(), Some(2));
}

#[test]
fn suite_config_with_flag_seed() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(
        dir.path().join("suite.json"),
        r#"{"runs": [
            {"experiment": "equivalence", "dictionary": {"kind": "identity", "m": 6}, "seed": 1,
             "s_set": [0, 1], "t_set": [0, 1, 4], "trials": 10},
            {"experiment": "sweep", "name": "stats", "dictionary": {"kind": "identity", "m": 6}, "seed": 1,
             "s_values": [1, 2], "trials_per_s": 5}
        ]}"#,
    )
    .unwrap();
    let out = sgap(&["experiment", "--config", "suite.json", "--seed", "99", "--out", "r"], dir.path());
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    for f in ["00-equivalence.json", "00-equivalence.csv", "stats.json", "stats.csv"] {
        assert!(dir.path().join("r").join(f).exists(), "{f}");
    }
    let v = report_without_timestamp(&dir.path().join("r/stats.json"));
    assert_eq!(v["manifest"]["config"]["seed"], 99);
    let rejected = sgap(&["experiment", "--config", "suite.json", "--s", "3"], dir.path());
    assert_eq!(rejected.status.code(), Some(2));
}
