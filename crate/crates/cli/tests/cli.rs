use std::path::Path;
use std::process::{Command, Output};
use std::sync::Arc;

use rector::elcat::ElCategory;
use rector::gf::FieldPrime;
use rector::sfunctor::{Representable, TableFunctor};
use rector::vfunctor::{forgetful_lift, TableFunctor as VTable, VfBuiltin};
use rector::Budget;
use serde_json::Value;

fn rector(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rector")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("bad JSON ({e}): {}", String::from_utf8_lossy(&out.stdout))
    })
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn demo_rector_on_plane() {
    let out = rector(&["demo", "--builtin", "representable", "--u-dim", "2", "--p", "2", "rector"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["schema"], 1);
    let classes = v["report"]["classes"].as_array().unwrap();
    assert_eq!(classes.len(), 5);
    assert!(classes.iter().all(|c| c["aut_order"] == 1));
}

#[test]
fn verify_theorems_passes() {
    let out = rector(&["verify-theorems", "--builtin", "representable", "--u-dim", "1", "--n-max", "2"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let v = json(&out);
    let suites = v["report"]["suites"].as_array().unwrap();
    let names: Vec<&str> = suites.iter().map(|s| s["name"].as_str().unwrap()).collect();
    assert_eq!(names, ["lemmas", "adjunction", "main1", "mainx"]);
    assert!(suites.iter().all(|s| s["passed"] == true));
    assert_eq!(v["config"]["cap"], 4);
}

#[test]
fn crafted_non_example_exits_one() {
    let out = rector(&["check-noetherian", "--builtin", "subsets", "--cap", "2"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    let cx = &v["report"]["weak"]["counterexample"];
    assert!(cx["alpha"].is_string() && cx["s"].is_object());
}

#[test]
fn representable_is_weakly_noetherian() {
    let out = rector(&["check-noetherian", "--u-dim", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["report"]["weak"]["counterexample"], Value::Null);
    assert_eq!(v["report"]["noetherian"]["max_regular_dim"], 2);
}

#[test]
fn malformed_json_is_a_positioned_parse_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "sfunctor.json", "{\"p\": 2,\n \"cap\": }");
    let out = rector(&["rector", "--input", &path]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 2 column"), "{err}");
}

#[test]
fn unknown_builtin_is_an_error() {
    let out = rector(&["rector", "--builtin", "nonsense"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn budget_errors_name_the_budget() {
    let out = rector(&["rector", "--u-dim", "2", "--budget-maps", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("map enumeration budget exceeded"));
}

#[test]
fn table_input_matches_builtin() {
    let dir = tempfile::tempdir().unwrap();
    let s = Representable::new(FieldPrime::TWO, 2, 3).unwrap();
    let table = TableFunctor::tabulate(&s, &Budget::default()).unwrap().to_file();
    let path = write(dir.path(), "sfunctor.json", &serde_json::to_string(&table).unwrap());
    let a = json(&rector(&["rector", "--input", &path]));
    let b = json(&rector(&["rector", "--u-dim", "2"]));
    assert_eq!(a["report"], b["report"]);
}

#[test]
fn vfunctor_table_degree_and_laws() {
    let dir = tempfile::tempdir().unwrap();
    let s = Arc::new(Representable::new(FieldPrime::TWO, 1, 3).unwrap());
    let cat = ElCategory::new(s, Budget::default()).unwrap();
    let t2 = forgetful_lift(&cat, VfBuiltin::Tensor(2));
    let file = VTable::tabulate(t2.as_ref()).unwrap().to_file();
    let path = write(dir.path(), "vfunctor.json", &serde_json::to_string(&file).unwrap());
    let out = rector(&["degree", "--vfunctor", &path]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["report"]["degree"], 2);
    let out = rector(&["validate", "--vfunctor", &path]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["report"]["vfunctor"]["failure"], Value::Null);
}

#[test]
fn vfunctor_table_over_wrong_field_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let s = Arc::new(Representable::new(FieldPrime::TWO, 1, 3).unwrap());
    let cat = ElCategory::new(s, Budget::default()).unwrap();
    let file = VTable::tabulate(forgetful_lift(&cat, VfBuiltin::Tensor(1)).as_ref()).unwrap().to_file();
    let path = write(dir.path(), "vfunctor.json", &serde_json::to_string(&file).unwrap());
    let out = rector(&["degree", "--p", "3", "--vfunctor", &path]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn same_seed_is_byte_identical() {
    let args = ["enumerate-simples", "--n-max", "2", "--seed", "9"];
    let a = rector(&args);
    let b = rector(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["report"]["simples"].as_array().unwrap().len(), 6);
}

#[test]
fn simples_of_symmetric_groups() {
    let v = json(&rector(&["simples-of-group", "--group", "sym:3"]));
    assert_eq!(v["report"]["count"], 2);
    assert_eq!(v["report"]["accounted_order"], 6);
    let v = json(&rector(&["simples-of-group", "--group", "sym:4", "--p", "3"]));
    assert_eq!(v["report"]["count"], 4);
    assert_eq!(v["passed"], true);
}

#[test]
fn degree_and_delta_of_tensor_square() {
    let v = json(&rector(&["degree", "--functor", "tensor:2"]));
    assert_eq!(v["report"]["degree"], 2);
    let v = json(&rector(&["delta", "--functor", "tensor:2", "--n-max", "2"]));
    let rows = v["report"]["rows"].as_array().unwrap();
    // at W = F_2: T^2 has dim 1, its difference 4 - 1 = 3, the second difference 2
    let r = rows.iter().find(|r| r["class"] == 0 && r["k"] == 1).unwrap();
    assert_eq!(r["value_dim"], 1);
    assert_eq!(r["delta_dims"], serde_json::json!([3, 2]));
}

#[test]
fn cross_effect_of_tensor_cube() {
    let v = json(&rector(&["cross-effect", "--functor", "tensor:3", "--split", "1,1,1", "--class", "0"]));
    assert_eq!(v["report"]["rows"][0]["cross_effect_dim"], 6);
}

#[test]
fn markdown_rendering() {
    let out = rector(&["rector", "--u-dim", "2", "--format", "markdown"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("# rector rector: PASS"));
    assert!(text.contains("| aut_elements"));
}

#[test]
fn demo_overview_lists_builtins() {
    let v = json(&rector(&["demo"]));
    let rows = v["report"]["examples"].as_array().unwrap();
    assert_eq!(rows.len(), 5);
    let subsets = rows.iter().find(|r| r["builtin"] == "subsets").unwrap();
    assert_eq!(subsets["weak_noetherian"], false);
}
