use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn modlie(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_modlie"))
        .current_dir(dir)
        .env_remove("MODLIE_THREADS")
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "bad JSON ({e}): {}\nstderr: {}",
            String::from_utf8_lossy(&out.stdout),
            String::from_utf8_lossy(&out.stderr)
        )
    })
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn build(dir: &Path, file: &str, args: &[&str]) -> PathBuf {
    let mut full = vec!["zoo", "build"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["-o", file]);
    let out = modlie(dir, &full);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    dir.join(file)
}

fn write_json<T: serde::Serialize>(dir: &Path, file: &str, value: &T) -> PathBuf {
    let p = dir.join(file);
    std::fs::write(&p, serde_json::to_string_pretty(value).unwrap()).unwrap();
    p
}

/// The 2-envelope of ess and its decomposition into N and M, as files.
fn fixture_files(dir: &Path) {
    let (l, n, m) = modlie::decomp::petravchuk_fixture();
    write_json(dir, "l.json", &l);
    write_json(dir, "n.json", &n);
    write_json(dir, "m.json", &m);
}

#[test]
fn census_left_count_n2() {
    let dir = TempDir::new().unwrap();
    let out = modlie(dir.path(), &["census", "run", "--n", "2", "--which", "left", "--json"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["t_left"], 14);
    assert!(v["t_lr"].is_null());
}

#[test]
fn census_conjecture_and_overlap() {
    let dir = TempDir::new().unwrap();
    let c = json(&modlie(dir.path(), &["census", "conjecture", "--n", "3", "--json"]));
    assert_eq!(c["equal_sets"], true);
    assert_eq!(c["t_sym"], 48);
    let o = json(&modlie(dir.path(), &["census", "overlap", "--n", "2", "--json"]));
    assert_eq!(o["overlap"], 7);
}

#[test]
fn census_rejects_bad_flags() {
    let dir = TempDir::new().unwrap();
    assert_eq!(code(&modlie(dir.path(), &["census", "run", "--n", "2", "--which", "bogus"])), 2);
    assert_eq!(code(&modlie(dir.path(), &["census", "run", "--n", "9"])), 1);
}

#[test]
fn census_budget_is_enforced() {
    let dir = TempDir::new().unwrap();
    let out = modlie(dir.path(), &["census", "run", "--n", "3", "--which", "left", "--key-budget", "100"]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("budget"));
}

#[test]
fn census_stretch_resumes() {
    let dir = TempDir::new().unwrap();
    let args = |max: &str| {
        vec![
            "census", "run", "--n", "3", "--stretch", "--checkpoint", "c.ckpt", "--chunk", "1000", "--max-chunks", max,
            "--json",
        ]
        .into_iter()
        .map(String::from)
        .collect::<Vec<_>>()
    };
    let first = args("3");
    let first: Vec<&str> = first.iter().map(String::as_str).collect();
    let partial = json(&modlie(dir.path(), &first));
    assert_eq!(partial["complete"], false);
    assert!(dir.path().join("c.ckpt").exists());
    let rest = args("1000");
    let rest: Vec<&str> = rest.iter().map(String::as_str).collect();
    let done = json(&modlie(dir.path(), &rest));
    assert_eq!(done["complete"], true);
    assert_eq!(done["t_sym"], 48);
    assert_eq!(done["equal_sets"], true);

    let full = modlie(dir.path(), &["census", "run", "--n", "2", "--stretch", "--which", "left", "--checkpoint", "d.ckpt"]);
    assert_eq!(code(&full), 2);
}

#[test]
fn symmetric_cohomology_of_ess() {
    let dir = TempDir::new().unwrap();
    build(dir.path(), "ess.json", &["ess"]);
    let out = modlie(dir.path(), &["cohomology", "ess.json", "--flavor", "symmetric", "--degree", "2", "--json"]);
    assert_eq!(code(&out), 0);
    let sym = json(&out)["dim_H"].as_u64().unwrap();
    let alt = json(&modlie(dir.path(), &["cohomology", "ess.json", "--degree", "2", "--json"]))["dim_H"]
        .as_u64()
        .unwrap();
    // independent of the CLI: the library on the same algebra
    let ess = modlie::zoo::ess();
    let triv = modlie::cohomology::CoefficientModule::trivial(&ess);
    let want = |f| modlie::cohomology::cohomology(&ess, &triv, 2, f).unwrap().dim_h as u64;
    assert_eq!(sym, want(modlie::cohomology::Flavor::Symmetric));
    assert_eq!(alt, want(modlie::cohomology::Flavor::Alternating));
}

#[test]
fn symmetric_cohomology_needs_char_two() {
    let dir = TempDir::new().unwrap();
    build(dir.path(), "sl2.json", &["sl2", "--field", "Q"]);
    let out = modlie(dir.path(), &["cohomology", "sl2.json", "--flavor", "symmetric", "--degree", "1"]);
    assert_eq!(code(&out), 1);
}

#[test]
fn check_reports_witness_for_non_lie() {
    let dir = TempDir::new().unwrap();
    build(dir.path(), "m2.json", &["matrix", "--n", "2", "--field", "Q"]);
    let out = modlie(dir.path(), &["check", "m2.json", "--json"]);
    assert_eq!(code(&out), 1);
    let v = json(&out);
    assert!(!v.to_string().is_empty());
    assert!(v.to_string().contains("witness"), "{v}");
    let ok = modlie(dir.path(), &["check", "m2.json", "--identity", "associative"]);
    assert_eq!(code(&ok), 0);
}

#[test]
fn usage_errors_exit_two() {
    let dir = TempDir::new().unwrap();
    assert_eq!(code(&modlie(dir.path(), &["frobnicate"])), 2);
    assert_eq!(code(&modlie(dir.path(), &["check", "missing.json"])), 2);
    std::fs::write(dir.path().join("junk.json"), "{ not json").unwrap();
    assert_eq!(code(&modlie(dir.path(), &["check", "junk.json"])), 2);
    build(dir.path(), "ess.json", &["ess"]);
    assert_eq!(code(&modlie(dir.path(), &["check", "ess.json", "--identity", "weird"])), 2);
}

#[test]
fn decomp_verify_fixture() {
    let dir = TempDir::new().unwrap();
    fixture_files(dir.path());
    let out = modlie(dir.path(), &["decomp", "verify", "l.json", "--n", "n.json", "--m", "m.json", "--json"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["is_direct"], true);
    assert_eq!(v["ambient_solvable"], false);

    // N + N is not the whole algebra
    let bad = modlie(dir.path(), &["decomp", "verify", "l.json", "--n", "n.json", "--m", "n.json"]);
    assert_eq!(code(&bad), 1);
}

#[test]
fn decomp_search_is_deterministic_with_manifest() {
    let dir = TempDir::new().unwrap();
    fixture_files(dir.path());
    let run = |out: &str, man: &str| {
        let o = modlie(
            dir.path(),
            &["decomp", "search", "l.json", "--seed", "5", "--json", "-o", out, "--manifest", man],
        );
        assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
        std::fs::read(dir.path().join(out)).unwrap()
    };
    let a = run("a.json", "ma.json");
    let b = run("b.json", "mb.json");
    assert_eq!(a, b);
    let v: Value = serde_json::from_slice(&a).unwrap();
    assert!(v["certificate"].is_object());

    let man: Value = serde_json::from_slice(&std::fs::read(dir.path().join("ma.json")).unwrap()).unwrap();
    assert_eq!(man["seed"], 5);
    assert_eq!(man["exit_code"], 0);
    let out_digest = man["outputs"][0]["sha256"].as_str().unwrap();
    use sha2::Digest;
    assert_eq!(out_digest, hex::encode(sha2::Sha256::digest(&a)));
    let in_digest = man["inputs"][0]["sha256"].as_str().unwrap();
    let input = std::fs::read(dir.path().join("l.json")).unwrap();
    assert_eq!(in_digest, hex::encode(sha2::Sha256::digest(&input)));
}

#[test]
fn envelope_of_ess() {
    let dir = TempDir::new().unwrap();
    build(dir.path(), "ess.json", &["ess"]);
    let v = json(&modlie(dir.path(), &["envelope", "ess.json", "--json"]));
    assert_eq!(v["dim"], 5);
    let alg: modlie::liecore::StructureAlgebra = serde_json::from_value(v["algebra"].clone()).unwrap();
    assert_eq!(alg, modlie::decomp::petravchuk_fixture().0);
}

#[test]
fn young_report_and_triangle() {
    let dir = TempDir::new().unwrap();
    build(dir.path(), "sl2.json", &["sl2", "--field", "Q"]);
    build(dir.path(), "a.json", &["truncated-poly", "--m", "2", "--field", "Q"]);
    let out = modlie(dir.path(), &["young", "report", "--a", "sl2.json", "--b", "a.json", "--nmax", "3", "--json"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["levels"].as_array().unwrap().len(), 2);
    assert!(v["grid"].is_string());

    fixture_files(dir.path());
    let t = modlie(
        dir.path(),
        &["young", "triangle", "--algebra", "l.json", "--n", "n.json", "--m", "m.json", "--nmax", "3", "--json"],
    );
    assert_eq!(code(&t), 0, "{}", String::from_utf8_lossy(&t.stderr));
    let v = json(&t);
    assert!(v["levels"].as_array().unwrap().iter().all(|l| l["assembly_matches"] == true));

    // the Young graph is a characteristic-zero tool
    build(dir.path(), "ess.json", &["ess"]);
    let bad = modlie(dir.path(), &["young", "report", "--a", "ess.json", "--b", "ess.json"]);
    assert_eq!(code(&bad), 1);
}

#[test]
fn zoo_json_round_trips() {
    let dir = TempDir::new().unwrap();
    for (file, args) in [
        ("w.json", vec!["zassenhaus", "--n", "3"]),
        ("h.json", vec!["heisenberg", "--field", "gfp:5"]),
        ("q.json", vec!["sl2", "--field", "Q"]),
    ] {
        let p = build(dir.path(), file, &args);
        let text = std::fs::read_to_string(&p).unwrap();
        let alg: modlie::liecore::StructureAlgebra = serde_json::from_str(&text).unwrap();
        let again = serde_json::to_string_pretty(&alg).unwrap();
        let back: modlie::liecore::StructureAlgebra = serde_json::from_str(&again).unwrap();
        assert_eq!(alg, back);
        assert_eq!(code(&modlie(dir.path(), &["check", file])), 0, "{file}");
    }
}

#[test]
fn suite_skips_large_census_rows() {
    let dir = TempDir::new().unwrap();
    let out = modlie(dir.path(), &["suite", "--census-max", "2", "--json"]);
    let v = json(&out);
    assert_eq!(v["passed"], false);
    let rows = v["rows"].as_array().unwrap();
    let skipped: Vec<&Value> = rows.iter().filter(|r| r["status"] == "SKIPPED").collect();
    assert_eq!(skipped.len(), 3);
    assert!(skipped.iter().all(|r| r["check"].as_str().unwrap().contains("n=3")));
    // exactly the literal cochain row fails
    let failed: Vec<&Value> = rows.iter().filter(|r| r["status"] == "FAIL").collect();
    assert_eq!(failed.len(), 1);
    assert_eq!(failed[0]["id"], "C8");
    assert_eq!(code(&out), 1);
}
