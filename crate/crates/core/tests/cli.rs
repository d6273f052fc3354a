use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use geodesy::cli::candidate::CandidateFile;
use geodesy::embedcheck::EmbeddingCandidate;
use serde_json::Value;

fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn geodesy(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_geodesy")).args(args).env_remove("GEODESY_JOBS").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn data(name: &str) -> String {
    root().join("data").join(name).display().to_string()
}

fn assert_valid(schema: &str, doc: &Value) {
    let schema: Value =
        serde_json::from_str(&std::fs::read_to_string(root().join("docs").join(schema)).unwrap()).unwrap();
    let v = jsonschema::validator_for(&schema).unwrap();
    let errors: Vec<String> = v.iter_errors(doc).map(|e| format!("{} at {}", e, e.instance_path())).collect();
    assert!(errors.is_empty(), "{schema:?}: {errors:?}");
}

fn json_out(args: &[&str]) -> Value {
    let o = geodesy(args);
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{args:?}: {e}"))
}

#[test]
fn bundled_candidates_check_out() {
    for name in ["diagonal_p2.json", "std_trivial_p2.json"] {
        let o = geodesy(&["check", &data(name)]);
        assert_eq!(o.status.code(), Some(0), "{name}");
        assert!(stdout(&o).contains("totally geodesic: yes"));
    }
}

#[test]
fn perturbed_candidate_fails() {
    let o = geodesy(&["check", &data("perturbed_p2.json")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("bracket [w,u]=2v violated"));
}

#[test]
fn malformed_files_are_usage_errors() {
    let dir = tempfile::tempdir().unwrap();
    let text = std::fs::read_to_string(data("diagonal_p2.json")).unwrap();
    let truncated = dir.path().join("truncated.json");
    std::fs::write(&truncated, &text[..text.len() / 3]).unwrap();
    let o = geodesy(&["check", truncated.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line "));

    let mut f = CandidateFile::parse(&text).unwrap();
    f.f_w.pop();
    let short = dir.path().join("short.json");
    std::fs::write(&short, f.to_json()).unwrap();
    let o = geodesy(&["check", short.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("f_w"));

    assert_eq!(geodesy(&["check", "/nonexistent/file.json"]).status.code(), Some(2));
}

#[test]
fn non_member_is_a_failed_check() {
    let dir = tempfile::tempdir().unwrap();
    let mut f = CandidateFile::from_candidate(&EmbeddingCandidate::diagonal(1).unwrap());
    f.f_u[0][0] = ["1".into(), "1".into(), "0".into(), "1".into()];
    let path = dir.path().join("bad.json");
    std::fs::write(&path, f.to_json()).unwrap();
    assert_eq!(geodesy(&["check", path.to_str().unwrap()]).status.code(), Some(1));
}

#[test]
fn bundled_files_match_library_candidates() {
    let pairs = [
        ("diagonal_p2.json", EmbeddingCandidate::diagonal(2).unwrap()),
        ("std_trivial_p2.json", EmbeddingCandidate::standard_plus_trivial(2, 1).unwrap()),
    ];
    for (name, c) in pairs {
        let text = std::fs::read_to_string(data(name)).unwrap();
        let f = CandidateFile::parse(&text).unwrap();
        assert_eq!(f.to_candidate().unwrap(), c);
        assert_eq!(f.to_json(), text);
        assert_valid("candidate.schema.json", &serde_json::from_str(&text).unwrap());
    }
}

#[test]
fn check_json_validates() {
    for name in ["diagonal_p2.json", "std_trivial_p2.json", "perturbed_p2.json"] {
        assert_valid("check-report.schema.json", &json_out(&["check", "--json", &data(name)]));
    }
}

#[test]
fn classify_exit_codes_and_text() {
    let o = geodesy(&["classify", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("ZZ* = 1") && text.contains("unresolved: 0"), "{text}");
    for bad in [["classify", "0"], ["classify", "9"], ["classify", "x"]] {
        assert_eq!(geodesy(&bad).status.code(), Some(2), "{bad:?}");
    }
    let o = geodesy(&["classify", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.lines().filter(|l| l.contains("standard^")).all(|l| l.contains("E = F = 0")));
}

#[test]
fn classify_json_and_certificates_validate() {
    let dir = tempfile::tempdir().unwrap();
    let certs = dir.path().join("certs");
    let doc = json_out(&["classify", "3", "--json", "--emit-certs", certs.to_str().unwrap()]);
    assert_valid("classify-summary.schema.json", &doc);
    let files: Vec<_> = std::fs::read_dir(&certs).unwrap().map(|e| e.unwrap().path()).collect();
    assert_eq!(files.len() as u64, doc["enumerated"].as_u64().unwrap());
    for f in files {
        let cert: Value = serde_json::from_str(&std::fs::read_to_string(&f).unwrap()).unwrap();
        assert_valid("certificate.schema.json", &cert);
        let stem = f.file_stem().unwrap().to_str().unwrap();
        assert_eq!(cert["hash"], stem);
    }
}

#[test]
fn jobs_flag_and_env_do_not_change_output() {
    let serial = geodesy(&["classify", "3", "--json"]).stdout;
    let parallel = geodesy(&["classify", "3", "--json", "--jobs", "4"]).stdout;
    let env = Command::new(env!("CARGO_BIN_EXE_geodesy"))
        .args(["classify", "3", "--json"])
        .env("GEODESY_JOBS", "3")
        .output()
        .unwrap()
        .stdout;
    assert_eq!(serial, parallel);
    assert_eq!(serial, env);
}

#[test]
fn oracle_reports() {
    let doc = json_out(&["oracle", "--plus", "1:2", "--minus", "-1:2", "--restarts", "20", "--seed", "7", "--json"]);
    assert_valid("oracle-report.schema.json", &doc);
    assert!(doc["final_residual"].as_f64().unwrap() < 1e-16);

    let doc = json_out(&["oracle", "--plus", "0:1", "--minus", "0:1", "--json"]);
    assert_eq!(doc["final_residual"].as_f64(), Some(0.0));
    assert_eq!(doc["iterations"].as_u64(), Some(0));

    let doc = json_out(&["oracle", "--p", "1", "--restarts", "3", "--json"]);
    assert_valid("oracle-report.schema.json", &doc);
    assert_eq!(doc["entries"].as_array().unwrap().len(), 3);
}

#[test]
fn oracle_usage_errors() {
    for bad in [
        &["oracle", "--plus", "1-2", "--minus", "-1:1"][..],
        &["oracle", "--plus", "1:1,1:1", "--minus", "-1:2"],
        &["oracle", "--plus", "1:1"],
        &["oracle"],
        &["oracle", "--p", "1", "--restarts", "0"],
    ] {
        assert_eq!(geodesy(bad).status.code(), Some(2), "{bad:?}");
    }
}

#[test]
fn selftest_passes_deterministically() {
    let a = geodesy(&["selftest"]);
    assert_eq!(a.status.code(), Some(0), "{}", stdout(&a));
    assert!(stdout(&a).contains("ok      jacobi"));
    assert_eq!(a.stdout, geodesy(&["selftest"]).stdout);
}
