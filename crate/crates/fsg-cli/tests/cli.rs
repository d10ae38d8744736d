use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn fsg(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fsg")).current_dir(dir).args(args).output().expect("run fsg")
}

fn write(dir: &Path, name: &str, text: &str) {
    std::fs::write(dir.join(name), text).unwrap();
}

fn fixtures() -> tempfile::TempDir {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "p3.json", r#"{"n":3,"edges":[[0,1],[1,2]]}"#);
    write(dir.path(), "edge12.json", r#"{"n":2,"edges":[[0,1]],"mult":[1,2]}"#);
    write(dir.path(), "bad.json", "{not json");
    dir
}

fn stdout_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("json stdout")
}

#[test]
fn components_examples() {
    let d = fixtures();
    let o = fsg(d.path(), &["components", "--x", "p3.json", "--y", "p3.json", "--variant", "fs", "--seed", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout_json(&o)["components"], serde_json::json!([3, 3]));
    let o = fsg(d.path(), &["components", "--x", "p3.json", "--y", "edge12.json", "--variant", "fsm", "--seed", "1"]);
    assert_eq!(stdout_json(&o)["components"], serde_json::json!([3]));
    let o = fsg(d.path(), &["components", "--x", "path:3", "--y", "edge12.json", "--variant", "fsmm", "--seed", "1"]);
    assert_eq!(stdout_json(&o)["components"], serde_json::json!([3]));
}

#[test]
fn exit_codes_are_stable() {
    let d = fixtures();
    let code = |args: &[&str]| fsg(d.path(), args).status.code();
    assert_eq!(code(&["components", "--x", "bad.json", "--y", "p3.json", "--seed", "1"]), Some(2));
    assert_eq!(code(&["components", "--x", "p3.json", "--y", "edge12.json", "--variant", "fs", "--seed", "1"]), Some(2));
    assert_eq!(code(&["components", "--x", "complete:7", "--y", "complete:7", "--budget", "100", "--seed", "1"]), Some(3));
    assert_eq!(code(&["predict", "--theorem", "thm99", "--x", "p3.json"]), Some(2));
    assert_eq!(code(&["verify", "--spec", "missing.json", "--seed", "1"]), Some(2));
    assert_eq!(code(&["gadget", "--rho", "1", "--m", "8", "--validate", "--seed", "1"]), Some(5));
    assert_eq!(code(&["gadget", "--rho", "1", "--m", "12", "--seed", "1"]), Some(2));
}

#[test]
fn predict_with_check() {
    let d = fixtures();
    write(d.path(), "x.json", r#"{"n":2,"edges":[[0,1]],"mult":[2,3]}"#);
    let o = fsg(d.path(), &["predict", "--theorem", "cor511", "--x", "x.json", "--seed", "1"]);
    assert_eq!(stdout_json(&o)["predicted"], Value::Bool(true));
    let o = fsg(d.path(), &["predict", "--theorem", "path-count", "--x", "x.json", "--check", "--seed", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let v = stdout_json(&o);
    assert_eq!(v["agree"], Value::Bool(true));
    assert_eq!(v["predicted"], v["oracle"]);
    write(d.path(), "s.json", r#"{"n":3,"edges":[[0,1],[0,2]],"mult":[2,1,1]}"#);
    let o = fsg(d.path(), &["predict", "--theorem", "thm16", "--x", "path:4", "--y", "s.json", "--check", "--seed", "1"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(fsg(d.path(), &["predict", "--theorem", "thm16", "--x", "path:4", "--seed", "1"]).status.code(), Some(2));
}

#[test]
fn verify_bundled_families() {
    let d = fixtures();
    for fam in ["thm16-small", "thm55-small"] {
        let o = fsg(d.path(), &["verify", "--family", fam, "--seed", "1"]);
        assert_eq!(o.status.code(), Some(0), "{fam}");
        let lines = String::from_utf8(o.stdout).unwrap();
        assert!(lines.lines().count() > 10);
        for l in lines.lines() {
            let v: Value = serde_json::from_str(l).unwrap();
            assert_eq!(v["agree"], Value::Bool(true));
        }
    }
    write(d.path(), "fam.json", r#"{"theorem":"path-count","max_n":2,"max_total":4}"#);
    assert_eq!(fsg(d.path(), &["verify", "--spec", "fam.json", "--seed", "1"]).status.code(), Some(0));
}

#[test]
fn sweep_is_byte_identical_and_seeded() {
    let d = fixtures();
    write(
        d.path(),
        "iso.json",
        r#"{"model":"gnp","n":8,"p_grid":[0.1,0.4,0.7],"trials":20,"base_seed":3,"statistic":"isolated-vertex"}"#,
    );
    let a = fsg(d.path(), &["sweep", "--config", "iso.json"]);
    let b = fsg(d.path(), &["sweep", "--config", "iso.json"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert!(String::from_utf8_lossy(&a.stderr).contains("seed: "), "absent --seed is printed");
    write(d.path(), "noseed.json", r#"{"model":"gnp","n":8,"p_grid":[0.5],"trials":20,"statistic":"isolated-vertex"}"#);
    let c = fsg(d.path(), &["sweep", "--config", "noseed.json", "--seed", "9"]);
    let e = fsg(d.path(), &["sweep", "--config", "noseed.json", "--seed", "9"]);
    assert_eq!(c.stdout, e.stdout);
    write(d.path(), "bad_p.json", r#"{"model":"gnp","n":8,"p_grid":[1.5],"trials":2,"base_seed":1,"statistic":"isolated-vertex"}"#);
    assert_eq!(fsg(d.path(), &["sweep", "--config", "bad_p.json"]).status.code(), Some(2));
}

#[test]
fn manifests_replay_byte_identically() {
    let d = fixtures();
    let runs: [&[&str]; 3] = [
        &["components", "--x", "p3.json", "--y", "cycle:3", "--out", "c.json", "--seed", "4"],
        &["gadget", "--rho", "3", "--m", "56", "--desk", "--validate", "--dump", "d.json", "--out", "g.json", "--seed", "4"],
        &["verify", "--family", "cor511-small", "--out", "v.jsonl", "--seed", "4"],
    ];
    for args in runs {
        fsg(d.path(), args);
        let out = args[args.iter().position(|a| *a == "--out").unwrap() + 1];
        let manifest = format!("{out}.manifest.json");
        let m: Value = serde_json::from_str(&std::fs::read_to_string(d.path().join(&manifest)).unwrap()).unwrap();
        assert_eq!(m["seed"], 4);
        assert_eq!(m["subcommand"], args[0]);
        assert!(m["output_digest"].as_str().unwrap().starts_with("sha256:"));
        assert!(m["wall_time_ms"].as_f64().unwrap() >= 0.0);
        let r = fsg(d.path(), &["replay", &manifest]);
        assert_eq!(r.status.code(), Some(0), "{}", String::from_utf8_lossy(&r.stdout));
        assert_eq!(stdout_json(&r)["reproduced"], Value::Bool(true));
    }
    // A tampered digest is reported as a disagreement.
    let path = d.path().join("c.json.manifest.json");
    let mut m: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    m["output_digest"] = "sha256:00".into();
    std::fs::write(&path, m.to_string()).unwrap();
    assert_eq!(fsg(d.path(), &["replay", "c.json.manifest.json"]).status.code(), Some(4));
}

#[test]
fn gadget_dump_and_validation_report() {
    let d = fixtures();
    let o = fsg(d.path(), &["gadget", "--rho", "2", "--m", "48", "--desk", "--validate", "--dump", "dump.json", "--seed", "2"]);
    let v = stdout_json(&o);
    let checks = v["validation"]["checks"].as_array().unwrap();
    let passed = |name: &str| checks.iter().find(|c| c["name"] == name).unwrap()["passed"].as_bool().unwrap();
    assert!(passed("bipartite_g") && passed("bipartite_h") && passed("c_rho"));
    // Structural checks that fail on every constructed pair give exit 4.
    assert_eq!(o.status.code(), Some(4));
    let dump: Value = serde_json::from_str(&std::fs::read_to_string(d.path().join("dump.json")).unwrap()).unwrap();
    assert_eq!(dump["vertices"].as_array().unwrap().len(), v["vertices"].as_u64().unwrap() as usize);
    let o = fsg(d.path(), &["gadget", "--rho", "1", "--m", "64", "--ell", "4", "--g", "4", "--s2", "2", "--seed", "2"]);
    assert_eq!(o.status.code(), Some(5));
}
