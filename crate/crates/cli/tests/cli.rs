use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use h4geproci::{GeprociCertificate, HalfGridCertificate, Refutation};
use jsonschema::{Draft, JSONSchema};
use serde_json::Value;

fn geproci(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_geproci"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn schema_path(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../docs/schemas")
        .join(name)
}

fn assert_valid(schema: &str, path: &Path) -> Value {
    let schema: Value =
        serde_json::from_str(&std::fs::read_to_string(schema_path(schema)).unwrap()).unwrap();
    let compiled = JSONSchema::options()
        .with_draft(Draft::Draft202012)
        .compile(&schema)
        .expect("schema compiles");
    let instance: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    if let Err(errors) = compiled.validate(&instance) {
        let msgs: Vec<String> = errors
            .map(|e| format!("{} at {}", e, e.instance_path))
            .take(5)
            .collect();
        panic!("{} does not match {schema:?}: {msgs:?}", path.display());
    }
    instance
}

/// Parses into `T` and serializes back; the result must equal the input.
fn assert_roundtrip<T: serde::de::DeserializeOwned + serde::Serialize>(v: &Value) {
    let parsed: T = serde_json::from_value(v.clone()).expect("parses");
    assert_eq!(&serde_json::to_value(&parsed).unwrap(), v);
}

#[test]
fn build_writes_config_deterministically() {
    let dir = tempfile::tempdir().unwrap();
    let out = geproci(&["build", "--out", "a.json"], dir.path());
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert!(stdout(&out).contains("60 points, 60 planes, 72 lines"));
    geproci(&["build", "--out", "b.json"], dir.path());
    let a = std::fs::read(dir.path().join("a.json")).unwrap();
    assert_eq!(a, std::fs::read(dir.path().join("b.json")).unwrap());

    let v = assert_valid("config.schema.json", &dir.path().join("a.json"));
    assert_eq!(v["points"].as_array().unwrap().len(), 60);
    assert_eq!(v["planes"].as_array().unwrap().len(), 60);
    assert_eq!(v["lines"].as_array().unwrap().len(), 72);
    assert_roundtrip::<h4geproci::config::ConfigDump>(&v);
}

#[test]
fn unwritable_output_is_an_io_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = geproci(&["build", "--out", "missing/dir/config.json"], dir.path());
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("error"));
}

#[test]
fn incidence_tables_match() {
    let dir = tempfile::tempdir().unwrap();
    let planes = geproci(&["incidences", "--kind", "planes"], dir.path());
    assert_eq!(code(&planes), 0, "{}", stderr(&planes));
    let text = stdout(&planes);
    assert_eq!(text.lines().count(), 60);
    assert!(text
        .lines()
        .all(|l| l.starts_with("V_") && l.split(',').count() == 15));

    let lines = geproci(
        &["incidences", "--kind", "lines", "--emit", "json"],
        dir.path(),
    );
    assert_eq!(code(&lines), 0);
    let rows: Vec<Vec<usize>> = serde_json::from_str(stdout(&lines).trim()).unwrap();
    assert_eq!(rows.len(), 72);
    assert_eq!(rows[0], [1, 29, 32, 33, 36]);
}

#[test]
fn corrupted_reference_table_fails_with_diff() {
    let dir = tempfile::tempdir().unwrap();
    let good = stdout(&geproci(&["incidences", "--kind", "planes"], dir.path()));
    let mut rows: Vec<Vec<usize>> = h4geproci::tables::parse_rows(&good).unwrap();
    let missing = (1..=60).find(|p| !rows[2].contains(p)).unwrap();
    rows[2][0] = missing;
    std::fs::write(
        dir.path().join("bad.txt"),
        h4geproci::tables::format_indexed("V", &rows),
    )
    .unwrap();
    let out = geproci(
        &["incidences", "--kind", "planes", "--reference", "bad.txt"],
        dir.path(),
    );
    assert_eq!(code(&out), 1);
    assert!(
        stderr(&out).contains("- V_3:") && stderr(&out).contains("+ V_3:"),
        "{}",
        stderr(&out)
    );
}

#[test]
fn coverings_count_and_table() {
    let dir = tempfile::tempdir().unwrap();
    let out = geproci(
        &["coverings", "--count-only", "--out", "coverings.json"],
        dir.path(),
    );
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).trim(), "84");
    let v = assert_valid("coverings.schema.json", &dir.path().join("coverings.json"));
    assert_eq!(v.as_array().unwrap().len(), 84);

    let table = geproci(&["coverings", "--emit", "table"], dir.path());
    assert_eq!(code(&table), 0);
    assert_eq!(stdout(&table).lines().count(), 84);
    assert!(stdout(&table).lines().all(|l| l.split(", ").count() == 12));
}

#[test]
fn tampered_coverings_reference_fails() {
    let dir = tempfile::tempdir().unwrap();
    let table = stdout(&geproci(&["coverings"], dir.path()));
    let tampered: Vec<&str> = table.lines().skip(1).collect();
    std::fs::write(dir.path().join("t.txt"), tampered.join("\n")).unwrap();
    let out = geproci(
        &["coverings", "--count-only", "--reference", "t.txt"],
        dir.path(),
    );
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("reference has 83"));
}

#[test]
fn verify_geproci_emits_certificate() {
    let dir = tempfile::tempdir().unwrap();
    let out = geproci(&["verify", "geproci", "--seed", "1"], dir.path());
    assert_eq!(code(&out), 0, "{}{}", stdout(&out), stderr(&out));
    assert!(stdout(&out).contains("status: pass"));
    let v = assert_valid(
        "geproci-cert.schema.json",
        &dir.path().join("geproci-cert.json"),
    );
    assert_eq!(v["dimension_table"], serde_json::json!([0, 0, 0, 0, 0, 1]));
    assert_eq!(v["c6_smoothness"]["verdict"], "smooth");
    assert_roundtrip::<GeprociCertificate>(&v);

    let again = geproci(
        &["verify", "geproci", "--seed", "1", "--out", "again.json"],
        dir.path(),
    );
    assert_eq!(code(&again), 0);
    assert_eq!(
        std::fs::read(dir.path().join("geproci-cert.json")).unwrap(),
        std::fs::read(dir.path().join("again.json")).unwrap()
    );
}

#[test]
fn verify_geproci_trials_emit_an_array() {
    let dir = tempfile::tempdir().unwrap();
    let out = geproci(
        &[
            "verify", "geproci", "--seed", "2", "--trials", "2", "--out", "c.json",
        ],
        dir.path(),
    );
    assert_eq!(code(&out), 0);
    let v = assert_valid("geproci-cert.schema.json", &dir.path().join("c.json"));
    let seeds: Vec<u64> = v
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["seed"].as_u64().unwrap())
        .collect();
    assert_eq!(seeds, [2, 3]);
}

#[test]
fn verify_half_grids() {
    let dir = tempfile::tempdir().unwrap();
    for subset in ["z1", "z2"] {
        let file = format!("{subset}.json");
        let out = geproci(
            &[
                "verify", "halfgrid", "--subset", subset, "--seed", "1", "--out", &file,
            ],
            dir.path(),
        );
        assert_eq!(code(&out), 0, "{}", stdout(&out));
        let v = assert_valid("halfgrid-cert.schema.json", &dir.path().join(&file));
        assert_eq!(v["subset"], subset);
        assert_eq!(v["bezout"]["product"], 30);
        assert_roundtrip::<HalfGridCertificate>(&v);
    }
}

#[test]
fn verify_not_half_grid() {
    let dir = tempfile::tempdir().unwrap();
    let out = geproci(&["verify", "not-halfgrid"], dir.path());
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("max_collinear = 5"));
    let v = assert_valid(
        "refutation.schema.json",
        &dir.path().join("refutation.json"),
    );
    assert_eq!(v["refuted"], true);
    assert_roundtrip::<Refutation>(&v);
}

#[test]
fn single_seed_report_is_complete_and_valid() {
    let dir = tempfile::tempdir().unwrap();
    let out = geproci(
        &["report", "--out", "report.json", "--seeds", "3"],
        dir.path(),
    );
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    let v = assert_valid("report.schema.json", &dir.path().join("report.json"));
    assert_eq!(v["status"], "pass");
    assert_eq!(v["seeds"], serde_json::json!([3]));
    let checks = v["checks"].as_array().unwrap();
    let names: Vec<&str> = checks.iter().map(|c| c["name"].as_str().unwrap()).collect();
    for expected in [
        "plane_table",
        "line_table",
        "coverings",
        "grid_count",
        "quadric_q1",
        "pairing_p4",
        "not_half_grid",
    ] {
        assert!(names.contains(&expected), "missing {expected}");
    }
    assert!(checks
        .iter()
        .all(|c| !c["claim"].as_str().unwrap().is_empty()));
    assert!(
        names.iter().any(|n| n.starts_with("z1.")) && names.iter().any(|n| n.starts_with("z2."))
    );
}

#[test]
fn usage_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&geproci(&["frobnicate"], dir.path())), 2);
    assert_eq!(
        code(&geproci(
            &["verify", "halfgrid", "--subset", "z3"],
            dir.path()
        )),
        2
    );
    assert_eq!(
        code(&geproci(
            &["verify", "geproci", "--trials", "0"],
            dir.path()
        )),
        2
    );
    assert_eq!(code(&geproci(&["incidences"], dir.path())), 2);
    assert_eq!(code(&geproci(&["--help"], dir.path())), 0);
    let missing = geproci(&["coverings", "--reference", "nope.txt"], dir.path());
    assert_eq!(code(&missing), 2);
}
