use std::process::{Command, Output};

fn qgc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qgc"))
        .args(args)
        .env_remove("QGC_MAX_DEGREE")
        .output()
        .expect("qgc runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn emit_r_q_one_by_one() {
    let o = qgc(&["emit", "r_q", "--n", "1"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["dim"], 1);
    assert_eq!(v["entries"], serde_json::json!([["s^2"]]));
}

#[test]
fn emit_r_h_two() {
    let o = qgc(&["emit", "r_h", "--n", "2"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["dim"], 4);
    assert_eq!(v["factors"], serde_json::json!([2, 2]));
    assert_eq!(v["entries"][0], serde_json::json!(["1", "h", "-h", "h^2"]));
}

#[test]
fn emit_latex() {
    let o = qgc(&["emit", "c_h", "--n", "2", "--format", "latex"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.starts_with("\\begin{pmatrix}"));
    assert!(s.contains("\\end{pmatrix}"));
}

#[test]
fn odd_metric_exits_two() {
    let o = qgc(&["emit", "c_h", "--n", "3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("no contraction limit: n must be even"));
    let o = qgc(&["emit", "rtilde_h", "--n", "3"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn table_flag_and_positional_agree() {
    let a = qgc(&["emit", "--table", "cgc-h"]);
    let b = qgc(&["emit", "cgc-h"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_str(&stdout(&a)).unwrap();
    assert_eq!(v["entries"].as_array().unwrap().len(), 16);
    assert_eq!(v["singlet_dim"], 1);
    assert_eq!(v["triplet_dim"], 3);
}

#[test]
fn unknown_names_are_usage_errors() {
    assert_eq!(qgc(&["emit", "r_x"]).status.code(), Some(2));
    assert_eq!(qgc(&["verify", "nope"]).status.code(), Some(2));
    assert_eq!(qgc(&["verify"]).status.code(), Some(2));
    assert_eq!(qgc(&["verify", "ybe", "--perturb", "x"]).status.code(), Some(2));
}

#[test]
fn verify_ybe_passes() {
    let o = qgc(&["verify", "ybe"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = qgc(&["verify", "--suite", "ybe", "--n", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn perturbed_ybe_fails_with_witness() {
    let o = qgc(&["verify", "ybe", "--perturb", "1,4", "--format", "json"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["overall"], false);
    let failed: Vec<_> = v["results"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|r| r["pass"] == false)
        .collect();
    assert!(!failed.is_empty());
    assert!(failed[0]["witness"].as_str().unwrap().contains("entry"));
}

#[test]
fn c_parity_suite() {
    let o = qgc(&["verify", "c-parity"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("C_h(3) has no limit"));
}

#[test]
fn report_file_has_schema_fields() {
    let dir = tempdir();
    let path = dir.join("report.json");
    let o = qgc(&["verify", "hecke", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    for key in ["suite", "parameters", "results", "elapsed", "overall"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["parameters"]["n"], 2);
    assert_eq!(v["parameters"]["m"], 1);
    assert_eq!(v["parameters"]["trunc"], 6);
    std::fs::remove_dir_all(dir).ok();
}

#[test]
fn degree_bound_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_qgc"))
        .args(["verify", "boson-abstract"])
        .env("QGC_MAX_DEGREE", "2")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("bound 2"));
}

#[test]
fn output_is_deterministic() {
    let a = qgc(&["verify", "coupled", "--format", "text"]);
    let b = qgc(&["verify", "coupled", "--format", "text"]);
    assert_eq!(a.stdout, b.stdout);
    let a = qgc(&["emit", "rtilde_h", "--n", "4"]);
    let b = qgc(&["emit", "rtilde_h", "--n", "4"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

fn tempdir() -> std::path::PathBuf {
    let d = std::env::temp_dir().join(format!("qgc-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&d).unwrap();
    d
}
