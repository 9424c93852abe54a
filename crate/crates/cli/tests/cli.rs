use std::path::{Path, PathBuf};
use std::process::{Command, Output};

const PATH: &str = r#"{"s":["s1","s2"],"t":["t1"],"edges":[["s1","t1"],["s2","t1"]]}"#;
const K11: &str = r#"{"s":["s1"],"t":["t1"],"edges":[["s1","t1"]]}"#;
const EDGELESS: &str = r#"{"s":["s1"],"t":["t1"],"edges":[]}"#;

fn bkmatch(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bkmatch")).args(args).output().expect("binary runs")
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn verify_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let k11 = write(dir.path(), "k11.json", K11);
    let out = dir.path().join("report.json");
    let o = bkmatch(&["verify", "--graph", k11.to_str().unwrap(), "--seed", "3", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let report: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(report["passed"], true);
    assert!(report["reports"].as_array().unwrap().len() > 100);

    let bad = write(dir.path(), "bad.json", r#"{"s":["s1","s2"],"t":[],"edges":[["s1","s2"]]}"#);
    assert_eq!(code(&bkmatch(&["verify", "--graph", bad.to_str().unwrap()])), 2);
    let missing = dir.path().join("missing.json");
    assert_eq!(code(&bkmatch(&["verify", "--graph", missing.to_str().unwrap()])), 2);
    assert_eq!(code(&bkmatch(&["verify"])), 2);
}

#[test]
fn verify_probe_is_reported_but_not_counted() {
    let dir = tempfile::tempdir().unwrap();
    let k11 = write(dir.path(), "k11.json", K11);
    let out = dir.path().join("report.json");
    let o = bkmatch(&[
        "verify", "--graph", k11.to_str().unwrap(), "--probe-sensitivity", "--num-events", "5", "--instances", "2",
        "--out", out.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    let report: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let probe = report["sensitivity_probe"].as_array().unwrap();
    assert_eq!(probe[0]["holds"], false);
    assert_eq!((probe[0]["lhs"].as_str(), probe[0]["rhs"].as_str()), (Some("1/2"), Some("1/4")));
}

#[test]
fn verify_with_event_literals() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "path.json", PATH);
    let out = dir.path().join("report.json");
    let o = bkmatch(&[
        "verify", "--graph", path.to_str().unwrap(), "--num-events", "0", "--instances", "0",
        "--exhaustive-max", "0", "--event-a", r#"[["t1"]]"#, "--event-b", r#"[["s1"]]"#, "--out", out.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    let report: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let bk = report["reports"].as_array().unwrap().iter().find(|r| r["check"] == "bk").unwrap().clone();
    assert_eq!((bk["lhs"].as_str(), bk["rhs"].as_str()), (Some("1/3"), Some("4/9")));

    // Explicit members must form an up-set.
    let o = bkmatch(&[
        "verify", "--graph", path.to_str().unwrap(), "--event-kind", "explicit", "--event-a", r#"[["t1"]]"#,
        "--event-b", r#"[["s1"]]"#,
    ]);
    assert_eq!(code(&o), 2);
}

#[test]
fn dist_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "path.json", PATH);
    let p = path.to_str().unwrap();
    let o = bkmatch(&["dist", "--graph", p]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "[[\"s1\",\"s2\"],\"1/3\"]\n[[\"s1\",\"t1\"],\"1/3\"]\n[[\"s2\",\"t1\"],\"1/3\"]\n");
    let o = bkmatch(&["dist", "--graph", p, "--max"]);
    assert_eq!(stdout(&o), "[[\"s1\",\"t1\"],\"1/2\"]\n[[\"s2\",\"t1\"],\"1/2\"]\n");
    let o = bkmatch(&["dist", "--graph", p, "--t", "10"]);
    assert!(stdout(&o).starts_with("[[\"s1\",\"s2\"],\"1/21\"]"));
    let o = bkmatch(&["dist", "--graph", p, "--plus", "t1"]);
    assert_eq!(stdout(&o), "[[\"s1\"],\"1/2\"]\n[[\"s2\"],\"1/2\"]\n");
    assert_eq!(code(&bkmatch(&["dist", "--graph", p, "--t", "0"])), 2);
    assert_eq!(code(&bkmatch(&["dist", "--graph", p, "--plus", "nobody"])), 2);

    let edgeless = write(dir.path(), "edgeless.json", EDGELESS);
    let o = bkmatch(&["dist", "--graph", edgeless.to_str().unwrap(), "--plus", "t1", "--minus", "s1"]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("empty conditioned space"));
}

#[test]
fn cells_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let k11 = write(dir.path(), "k11.json", K11);
    let p = k11.to_str().unwrap();
    let o = bkmatch(&["cells", "--graph", p]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).lines().count(), 3);
    for line in stdout(&o).lines() {
        let cell: serde_json::Value = serde_json::from_str(line).unwrap();
        for key in ["w", "k", "l", "paths", "h", "b_i", "u", "x"] {
            assert!(cell.get(key).is_some(), "missing {key}");
        }
    }
    let o = bkmatch(&["cells", "--graph", p, "--pair", "0,1"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).lines().count(), 1);
    let cell: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(cell["paths"].as_array().unwrap().len(), 1);
    assert_eq!(code(&bkmatch(&["cells", "--graph", p, "--pair", "0,2"])), 2);
    assert_eq!(code(&bkmatch(&["cells", "--graph", p, "--pair", "x"])), 2);
}

#[test]
fn reimer_modes() {
    let o = bkmatch(&["reimer", "--universe", "3", "--exhaustive"]);
    assert_eq!(code(&o), 0);
    let r: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!((r["lhs"].as_str(), r["rhs"].as_str()), (Some("65536/1"), Some("65536/1")));
    assert_eq!(code(&bkmatch(&["reimer", "--universe", "4", "--exhaustive"])), 2);
    assert_eq!(code(&bkmatch(&["reimer", "--universe", "4", "--samples", "100000", "--seed", "5"])), 0);
    assert_eq!(code(&bkmatch(&["reimer", "--universe", "3"])), 2);
}

#[test]
fn sweeps() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("sweep.json");
    let o = bkmatch(&["sweep", "--max-vertices", "3", "--seed", "1", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let report: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    // Labeled graphs with s + t <= 3, by size: 1 + 2 + (1 + 2 + 1) + (1 + 4 + 4 + 1).
    assert_eq!(report["graphs"], 17);
    assert_eq!(report["passed"], true);

    let o = bkmatch(&["sweep", "--random", "5", "--s", "2", "--t", "2", "--edge-prob", "2/3", "--seed", "4"]);
    assert_eq!(code(&o), 0);
    assert_eq!(code(&bkmatch(&["sweep", "--random", "5", "--s", "2", "--t", "2", "--edge-prob", "3/2"])), 2);
    assert_eq!(code(&bkmatch(&["sweep", "--max-vertices", "40"])), 2);
}

#[test]
fn vertex_cap_override() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "path.json", PATH);
    let o = Command::new(env!("CARGO_BIN_EXE_bkmatch"))
        .args(["dist", "--graph", path.to_str().unwrap()])
        .env("BKMATCH_MAX_VERTICES", "2")
        .output()
        .unwrap();
    assert_eq!(code(&o), 2);
}
