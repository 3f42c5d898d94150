use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn demorgan(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_demorgan"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn spec(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../specs")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn strings(v: &Value) -> Vec<&str> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|s| s.as_str().unwrap())
        .collect()
}

#[test]
fn analyze_f5() {
    let out = demorgan(&["analyze", &spec("f5.json")]);
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    assert_eq!(report["frame_name"], "F5");
    assert_eq!(report["frame_size"], 5);
    let golden = ["∅", "{x}", "{y}", "{x,y,z}"];
    assert_eq!(strings(&report["booleanization"]), golden);
    assert_eq!(strings(&report["demorganization"]), golden);
    let flags = &report["flags"];
    assert_eq!(flags["ed"], false);
    assert_eq!(flags["B_equals_M"], true);
    assert_eq!(flags["M_equals_L"], false);
    assert_eq!(flags["fitted_B"], true);
}

#[test]
fn analyze_c3_and_b4() {
    let c3 = json(&demorgan(&["analyze", "--oracle", &spec("c3.json")]));
    assert_eq!(strings(&c3["booleanization"]), ["∅", "{x,y}"]);
    assert_eq!(strings(&c3["demorganization"]), ["∅", "{x}", "{x,y}"]);
    assert_eq!(c3["flags"]["ed"], true);
    assert_eq!(c3["oracle"]["agree"], true);

    let b4 = json(&demorgan(&["analyze", &spec("b4.json")]));
    assert_eq!(b4["flags"]["boolean"], true);
    assert_eq!(b4["flags"]["B_equals_M"], true);
    assert_eq!(b4["flags"]["M_equals_L"], true);
}

#[test]
fn analyze_reads_stdin() {
    use std::io::Write;
    use std::process::Stdio;
    let mut child = Command::new(env!("CARGO_BIN_EXE_demorgan"))
        .args(["analyze", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(br#"{"kind":"standard","payload":{"family":"chain","n":4}}"#)
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["frame_name"], "chain-4");
}

#[test]
fn verify_with_oracle_passes_on_fixtures() {
    for name in ["c3.json", "f5.json", "b4.json", "c3-times-b4.json"] {
        let out = demorgan(&["verify", "--oracle", &spec(name)]);
        assert_eq!(out.status.code(), Some(0), "{name}");
        let report = json(&out);
        assert_eq!(report["oracle"]["ran"], true);
        assert_eq!(report["oracle"]["agree"], true);
        assert_eq!(report["law_failures"].as_array().unwrap().len(), 0);
    }
}

#[test]
fn tampered_implication_is_an_integrity_failure() {
    let out = demorgan(&["verify", &spec("c3-tampered.json")]);
    assert_eq!(out.status.code(), Some(2));
    let report = json(&out);
    let failures = strings(&report["law_failures"]);
    assert!(failures
        .iter()
        .any(|f| f.starts_with("H5") && f.contains("a=m, b=0")));
}

#[test]
fn input_errors_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    let malformed = write(
        dir.path(),
        "bad.json",
        "{\"kind\": \"topology\",\n \"payload\": [}",
    );
    let out = demorgan(&["analyze", malformed.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));

    let not_topology = write(
        dir.path(),
        "nt.json",
        r#"{"kind":"topology","payload":{"points":["x","y"],"opens":[[],["x"],["y"]]}}"#,
    );
    assert_eq!(
        demorgan(&["verify", not_topology.to_str().unwrap()])
            .status
            .code(),
        Some(1)
    );

    let pentagon = write(
        dir.path(),
        "n5.json",
        r#"{"kind":"lattice","payload":{"elements":["0","x","y","z","1"],
            "leq":[["0","x"],["x","y"],["y","1"],["0","z"],["z","1"]]}}"#,
    );
    let out = demorgan(&["analyze", pentagon.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("distributive"));

    assert_eq!(
        demorgan(&["analyze", "/nonexistent.json"]).status.code(),
        Some(1)
    );
    assert_eq!(
        demorgan(&["corpus", "--points", "2"]).status.code(),
        Some(1)
    );
    assert_eq!(
        demorgan(&["corpus", "--points", "5", "--all"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(demorgan(&["--help"]).status.code(), Some(0));
}

#[test]
fn corpus_counts() {
    for (points, expected) in [("2", 4), ("3", 29)] {
        let out = demorgan(&["corpus", "--points", points, "--all", "--oracle"]);
        assert_eq!(out.status.code(), Some(0));
        let lines: Vec<Value> = String::from_utf8(out.stdout)
            .unwrap()
            .lines()
            .map(|l| serde_json::from_str(l).unwrap())
            .collect();
        assert_eq!(lines.len(), expected);
        assert!(lines.iter().all(|r| r["oracle"]["agree"] == true));
        assert!(lines.iter().all(|r| r["runtime_ms"].is_null()));
        let summary: Value = serde_json::from_slice(&out.stderr).unwrap();
        assert_eq!(summary["frames"], expected);
        assert_eq!(summary["failures"], 0);
    }
}

#[test]
fn corpus_output_is_identical_across_worker_counts() {
    let dir = tempfile::tempdir().unwrap();
    let run = |workers: &str, file: &str| {
        let path = dir.path().join(file);
        let out = demorgan(&[
            "corpus",
            "--points",
            "4",
            "--all",
            "--oracle",
            "--seed",
            "1",
            "--workers",
            workers,
            "--out",
            path.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0));
        let summary: Value = serde_json::from_slice(&out.stdout).unwrap();
        assert_eq!(summary["frames"], 355);
        std::fs::read(path).unwrap()
    };
    let one = run("1", "one.jsonl");
    let four = run("4", "four.jsonl");
    assert!(!one.is_empty());
    assert_eq!(one, four);

    let random = |workers: &str| {
        demorgan(&[
            "corpus",
            "--points",
            "5",
            "--random",
            "20",
            "--seed",
            "3",
            "--workers",
            workers,
        ])
        .stdout
    };
    assert_eq!(random("1"), random("3"));
}

#[test]
fn export_dot() {
    let out = demorgan(&["export-dot", &spec("c3.json")]);
    assert_eq!(out.status.code(), Some(0));
    let dot = String::from_utf8(out.stdout).unwrap();
    assert!(dot.starts_with("digraph"));
    assert_eq!(dot.matches("[label=").count(), 3);
    assert_eq!(dot.matches(" -> ").count(), 2);

    let out = demorgan(&["export-dot", "--what", "sublocales", &spec("c3.json")]);
    let dot = String::from_utf8(out.stdout).unwrap();
    assert_eq!(dot.matches("[label=").count(), 4);
    assert_eq!(dot.matches(" -> ").count(), 4);

    let out = demorgan(&["export-dot", &spec("f5.json")]);
    let dot = String::from_utf8(out.stdout).unwrap();
    assert_eq!(dot.matches("[label=").count(), 5);
    assert_eq!(dot.matches(" -> ").count(), 5);
}

#[test]
fn cache_serves_repeat_runs() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache");
    let args = ["--cache", cache.to_str().unwrap(), "verify", "--oracle"];
    let first = demorgan(&[&args[..], &[spec("f5.json").as_str()]].concat());
    assert_eq!(first.status.code(), Some(0));
    let entries: Vec<_> = std::fs::read_dir(&cache).unwrap().collect();
    assert_eq!(entries.len(), 1);

    // A planted entry proves the second run reads the cache instead of
    // recomputing.
    let entry = entries[0].as_ref().unwrap().path();
    let mut planted: Value = serde_json::from_slice(&std::fs::read(&entry).unwrap()).unwrap();
    planted["frame_size"] = Value::from(99);
    std::fs::write(&entry, serde_json::to_vec(&planted).unwrap()).unwrap();
    let second = demorgan(&[&args[..], &[spec("f5.json").as_str()]].concat());
    assert_eq!(json(&second)["frame_size"], 99);

    // Different flags use a different key.
    let plain = demorgan(&[
        "--cache",
        cache.to_str().unwrap(),
        "verify",
        &spec("f5.json"),
    ]);
    assert_eq!(json(&plain)["frame_size"], 5);
    assert_eq!(std::fs::read_dir(&cache).unwrap().count(), 2);
}
