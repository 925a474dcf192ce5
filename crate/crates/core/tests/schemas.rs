//! The JSON schemas under docs/schemas must declare every key the binary
//! emits. Full validation is done with an external validator; this guards
//! against drift when a field is added.

use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;

fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn load(rel: &str) -> Value {
    serde_json::from_str(&std::fs::read_to_string(root().join(rel)).unwrap()).unwrap()
}

fn run(args: &[&str]) -> Value {
    let out = Command::new(env!("CARGO_BIN_EXE_qhf")).args(args).output().unwrap();
    serde_json::from_slice(&out.stdout).unwrap()
}

fn declared<'a>(schema: &'a Value, def: Option<&str>) -> &'a serde_json::Map<String, Value> {
    let node = match def {
        Some(d) => &schema["$defs"][d],
        None => schema,
    };
    node["properties"].as_object().unwrap_or_else(|| panic!("no properties for {def:?}"))
}

fn assert_keys(value: &Value, schema: &Value, def: Option<&str>) {
    let props = declared(schema, def);
    for key in value.as_object().unwrap().keys() {
        assert!(props.contains_key(key), "`{key}` missing from schema {def:?}");
    }
}

#[test]
fn report_keys_are_declared() {
    let schema = load("docs/schemas/report.schema.json");
    let structure = load("docs/schemas/structure.schema.json");
    let scene = root().join("scenes/s3_double_cosets.json");
    let r = run(&["--format", "json", "--witnesses", "construct", scene.to_str().unwrap()]);
    assert_keys(&r, &schema, None);
    assert_keys(&r["summary"], &schema, Some("summary"));
    let p = &r["pipelines"][0];
    assert_keys(p, &schema, Some("pipeline_outcome"));
    assert_keys(&p["idempotent_report"], &schema, Some("idempotent_report"));
    let res = &p["results"][0];
    assert_keys(res, &schema, Some("hypergroup_result"));
    assert_keys(&res["analysis"], &schema, Some("analysis"));
    assert_keys(&res["structure"], &structure, None);
    assert_keys(&res["ledger"][0], &schema, Some("check"));
    let dual = r["pipelines"].as_array().unwrap().iter().find(|p| p.get("duality").is_some()).unwrap();
    assert_keys(&dual["duality"], &schema, Some("duality_report"));
    assert_keys(&dual["central"], &schema, Some("central_report"));

    let s = run(&["--format", "json", "sweep", "--max-order", "3", "--search-exceptional"]);
    assert_keys(&s["sweep"], &schema, Some("sweep_report"));
    assert_keys(&s["sweep"]["groups"][0], &schema, Some("group_sweep"));
    assert_keys(&s["sweep"]["groups"][0]["entries"][0], &schema, Some("sweep_entry"));
    assert_keys(&s["sweep"]["exceptional_search"], &schema, Some("exceptional_search"));
}

#[test]
fn bundled_scenes_use_declared_keys() {
    let schema = load("docs/schemas/scene.schema.json");
    for entry in std::fs::read_dir(root().join("scenes")).unwrap() {
        let v: Value = serde_json::from_str(&std::fs::read_to_string(entry.unwrap().path()).unwrap()).unwrap();
        assert_keys(&v, &schema, None);
        assert_eq!(v["schema_version"], schema["properties"]["schema_version"]["const"]);
    }
}
