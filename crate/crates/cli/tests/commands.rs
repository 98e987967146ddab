use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use laminations::{ALamination, LamCurve, PLamination};
use serde_json::Value;
use surface_combinatorics::Triangulation;
use tempfile::TempDir;

fn qskein(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qskein")).args(args).output().expect("binary runs")
}

fn stdout_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

fn write(dir: &TempDir, name: &str, v: &impl serde::Serialize) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, serde_json::to_string(v).unwrap()).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn triangle_matrices() {
    let dir = TempDir::new().unwrap();
    let tri = write(&dir, "tri.json", &Triangulation::triangle().to_json());
    let o = qskein(&["matrices", "--tri", s(&tri)]);
    assert_eq!(o.status.code(), Some(0));
    let v = stdout_json(&o);
    let eps = &v["epsilon"];
    assert_eq!((eps[0][1].as_i64(), eps[1][2].as_i64(), eps[2][0].as_i64()), (Some(1), Some(1), Some(1)));
    for (_, ok) in v["checks"].as_object().unwrap() {
        assert_eq!(ok, &Value::Bool(true));
    }
}

#[test]
fn pentagon_matrices_are_seven_by_seven() {
    let dir = TempDir::new().unwrap();
    let tri = write(&dir, "tri.json", &Triangulation::disk_fan(5).to_json());
    let v = stdout_json(&qskein(&["matrices", "--tri", s(&tri)]));
    assert_eq!(v["pi"].as_array().unwrap().len(), 7);
    assert_eq!(v["checks"]["p_pi_pt_equals_minus_4_epsilon"], Value::Bool(true));
}

#[test]
fn malformed_input_exits_with_two() {
    let dir = TempDir::new().unwrap();
    let p = dir.path().join("bad.json");
    std::fs::write(&p, "{ not json").unwrap();
    let o = qskein(&["matrices", "--tri", s(&p)]);
    assert_eq!(o.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(err["error"], "input");
    assert_eq!(qskein(&["verify", "nonsense"]).status.code(), Some(2));
}

#[test]
fn elementary_lamination_gives_its_edge() {
    let dir = TempDir::new().unwrap();
    let t = Triangulation::disk_fan(5);
    let tri = write(&dir, "tri.json", &t.to_json());
    for e in &t.edges {
        let lam = write(&dir, "lam.json", &PLamination::elementary(&t, e.id).unwrap().to_json(&t).unwrap());
        let v = stdout_json(&qskein(&["duality-x", "--tri", s(&tri), "--lam", s(&lam)]));
        let terms = v["terms"].as_array().unwrap();
        assert_eq!(terms.len(), 1);
        let mut want = vec![0; t.n()];
        want[t.idx(e.id)] = 1;
        assert_eq!(terms[0]["coords"], serde_json::json!(want));
        assert_eq!(terms[0]["scalar"], serde_json::json!([[0, 1]]));
    }
}

#[test]
fn traces_of_empty_lamination_and_core_loop() {
    let dir = TempDir::new().unwrap();
    let t = Triangulation::annulus(0);
    let tri = write(&dir, "tri.json", &t.to_json());
    let empty = write(&dir, "empty.json", &ALamination::empty(t.model).to_json(&t).unwrap());
    let v = stdout_json(&qskein(&["trace", "--tri", s(&tri), "--lam", s(&empty)]));
    assert_eq!(v["terms"].as_array().unwrap().len(), 1);
    assert_eq!(v["pointed"]["verified"], Value::Bool(true));
    let core = ALamination::from_pairs(t.model, [(LamCurve::Core, 1)]).unwrap();
    let lam = write(&dir, "core.json", &core.to_json(&t).unwrap());
    let v = stdout_json(&qskein(&["trace", "--tri", s(&tri), "--lam", s(&lam)]));
    assert_eq!(v["terms"].as_array().unwrap().len(), 3);
    assert_eq!(v["pointed"]["verified"], Value::Bool(true));
}

#[test]
fn non_congruent_duality_is_an_input_error() {
    let dir = TempDir::new().unwrap();
    let t = Triangulation::disk_fan(4);
    let tri = write(&dir, "tri.json", &t.to_json());
    let l = ALamination::from_pairs(t.model, [(LamCurve::Arc(1, 3), 1)]).unwrap();
    let lam = write(&dir, "lam.json", &l.to_json(&t).unwrap());
    let o = qskein(&["duality-a", "--tri", s(&tri), "--lam", s(&lam)]);
    assert_eq!(o.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(err["error"], "not_congruent");
}

#[test]
fn flips_compose_receipts() {
    let dir = TempDir::new().unwrap();
    let t = Triangulation::disk_fan(5);
    let tri = write(&dir, "tri.json", &t.to_json());
    let k = t.interior_edges()[0].to_string();
    let o = qskein(&["flip", "--tri", s(&tri), "--edge", &k]);
    assert_eq!(o.status.code(), Some(0));
    let v = stdout_json(&o);
    let new = v["receipts"][0]["new"].as_u64().unwrap().to_string();
    let flipped = write(&dir, "flipped.json", &v["triangulation"]);
    let back = stdout_json(&qskein(&["flip", "--tri", s(&flipped), "--edge", &new]));
    let again: surface_combinatorics::TriangulationJson = serde_json::from_value(back["triangulation"].clone()).unwrap();
    assert_eq!(Triangulation::from_json(&again).unwrap().class_key(), t.class_key());
    let boundary = t.edges.iter().find(|e| t.is_boundary(e.id)).unwrap().id.to_string();
    assert_eq!(qskein(&["flip", "--tri", s(&tri), "--edge", &boundary]).status.code(), Some(2));
}

#[test]
fn crossing_diagonals_have_positive_structure_constants() {
    let o = qskein(&["structure-constants", "--surface", "d4", "--b1", "c0_2", "--b2", "c1_3"]);
    assert_eq!(o.status.code(), Some(0));
    let v = stdout_json(&o);
    assert_eq!(v["terms"].as_array().unwrap().len(), 2);
    assert_eq!(v["positive"], Value::Bool(true));
}

#[test]
fn verify_suites_pass_and_are_reproducible() {
    let o = qskein(&["verify", "positivity", "--bound-disks", "4", "--bound-copies", "2", "--bound-twist", "1", "--bound-degree", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let o = qskein(&["verify", "annulus-formulas"]);
    assert_eq!(o.status.code(), Some(0));
    let a = qskein(&["verify", "allegretti", "--seed", "9", "--bound-samples", "10"]);
    let b = qskein(&["verify", "allegretti", "--seed", "9", "--bound-samples", "10"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let t = qskein(&["verify", "allegretti", "--seed", "9", "--bound-samples", "10", "--format", "tsv"]);
    let text = String::from_utf8(t.stdout).unwrap();
    assert!(text.starts_with("suite\tcases\tpassed\tfailed\nallegretti\t10\t10\t0"));
}

#[test]
fn output_file_matches_stdout() {
    let dir = TempDir::new().unwrap();
    let tri = write(&dir, "tri.json", &Triangulation::disk_fan(4).to_json());
    let out = dir.path().join("out.json");
    let o = qskein(&["matrices", "--tri", s(&tri), "--out", s(&out)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    assert_eq!(std::fs::read(&out).unwrap(), qskein(&["matrices", "--tri", s(&tri)]).stdout);
}
