use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_toric-t")).args(args).env_remove("TORIC_T_WORKERS").output().unwrap()
}

fn run_on(cmd: &str, file: &str, extra: &[&str]) -> Output {
    let path = data(file);
    let mut args = vec![cmd, path.to_str().unwrap()];
    args.extend_from_slice(extra);
    run(&args)
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let root = schema();
    if let Err(e) = validate(&root, &root, &v, "$") {
        panic!("report does not match the schema: {e}");
    }
    v
}

fn temp_input(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn schema() -> Value {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("schema/report.schema.json");
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

/// Checks the keywords the shipped schema uses; reports the location of the first violation.
fn validate(root: &Value, s: &Value, v: &Value, at: &str) -> Result<(), String> {
    if let Some(r) = s.get("$ref").and_then(Value::as_str) {
        let name = r.strip_prefix("#/$defs/").unwrap();
        return validate(root, &root["$defs"][name], v, at);
    }
    if let Some(options) = s.get("oneOf").and_then(Value::as_array) {
        let ok = options.iter().filter(|o| validate(root, o, v, at).is_ok()).count();
        ensure!(ok == 1, "{at}: {ok} alternatives match {v}");
    }
    if let Some(c) = s.get("const") {
        ensure!(v == c, "{at}: expected {c}");
    }
    if let Some(e) = s.get("enum").and_then(Value::as_array) {
        ensure!(e.contains(v), "{at}: {v} not in {e:?}");
    }
    if let Some(t) = s.get("type").and_then(Value::as_str) {
        let ok = match t {
            "object" => v.is_object(),
            "array" => v.is_array(),
            "string" => v.is_string(),
            "integer" => v.is_i64() || v.is_u64(),
            "boolean" => v.is_boolean(),
            "null" => v.is_null(),
            other => panic!("unsupported type {other}"),
        };
        ensure!(ok, "{at}: expected {t}, got {v}");
    }
    if let Some(m) = s.get("minimum").and_then(Value::as_i64) {
        ensure!(v.as_i64().is_none_or(|x| x >= m), "{at}: {v} < {m}");
    }
    if let Some(items) = s.get("items") {
        for (i, x) in v.as_array().into_iter().flatten().enumerate() {
            validate(root, items, x, &format!("{at}[{i}]"))?;
        }
    }
    if let Some(obj) = v.as_object() {
        for req in s.get("required").and_then(Value::as_array).into_iter().flatten() {
            ensure!(obj.contains_key(req.as_str().unwrap()), "{at}: missing {req}");
        }
        if let Some(props) = s.get("properties").and_then(Value::as_object) {
            for (k, x) in obj {
                match props.get(k) {
                    Some(p) => validate(root, p, x, &format!("{at}.{k}"))?,
                    None => ensure!(s.get("additionalProperties") != Some(&Value::Bool(false)), "{at}: unexpected {k}"),
                }
            }
        }
    }
    Ok(())
}

#[test]
fn validator_rejects_bad_reports() {
    let root = schema();
    let mut doc = json(&run_on("info", "a1.json", &[]));
    doc["extra"] = Value::Bool(true);
    assert!(validate(&root, &root, &doc, "$").is_err());
    let mut doc = json(&run_on("harrison", "a1.json", &["--degree", "2,0"]));
    doc["cohomology"][0]["dim"] = Value::from(-1);
    assert!(validate(&root, &root, &doc, "$").is_err());
}

fn total(doc: &Value, n: u64) -> u64 {
    doc["totals"].as_array().unwrap().iter().find(|t| t["n"] == n).unwrap()["dim"].as_u64().unwrap()
}

#[test]
fn info_on_the_standard_examples() {
    let a1 = json(&run_on("info", "a1.json", &[]));
    assert_eq!(a1["hilbert_basis"].as_array().unwrap().len(), 3);
    assert_eq!(a1["faces"].as_array().unwrap().last().unwrap()["smooth"], false);
    assert_eq!(a1["classification"]["isolated"], true);

    let quadrant = json(&run_on("info", "quadrant.json", &[]));
    assert!(quadrant["faces"].as_array().unwrap().iter().all(|f| f["smooth"] == true));
    assert_eq!(quadrant["faces"][3]["labels"], serde_json::json!(["x", "y"]));

    let quadric = json(&run_on("info", "quadric.json", &[]));
    assert_eq!(quadric["classification"]["gorenstein_codim2"], true);
    assert_eq!(quadric["face_counts"], serde_json::json!([1, 4, 4, 1]));

    let flat = json(&run_on("info", "flat.json", &[]));
    assert_eq!(flat["hilbert_basis"], Value::Null);
    assert_eq!(flat["cone"]["full_dimensional"], false);
}

#[test]
fn a1_box_has_one_deformation() {
    let doc = json(&run_on("t", "a1.json", &["--box", "3", "--nonzero"]));
    let degrees = doc["degrees"].as_array().unwrap();
    assert_eq!(degrees.len(), 1);
    assert_eq!(degrees[0]["degree"], serde_json::json!([2, 0]));
    assert_eq!(degrees[0]["entries"], serde_json::json!([{"n": 1, "dim": 1, "path": "span", "status": "unchecked", "checks": []}]));
    assert_eq!(total(&doc, 1), 1);
}

#[test]
fn quadrant_is_rigid() {
    let doc = json(&run_on("t", "quadrant.json", &["--box", "2", "--n", "1,2"]));
    assert_eq!(total(&doc, 1), 0);
    assert_eq!(total(&doc, 2), 0);
}

#[test]
fn a1_all_n() {
    let doc = json(&run_on("t", "a1.json", &["--degree", "2,0", "--all-n"]));
    let entries = doc["degrees"][0]["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 6);
    for e in entries {
        let expected = if e["n"] == 1 { 1 } else { 0 };
        assert_eq!(e["dim"], expected, "{e}");
    }
}

#[test]
fn verify_and_basis() {
    let doc = json(&run_on("t", "a1.json", &["--box", "-1:3,-2:2", "--n", "0,1,2", "--verify", "--emit-basis"]));
    assert!(doc["cross_check"]["compared"].as_u64().unwrap() > 0);
    assert_eq!(doc["cross_check"]["mismatches"], serde_json::json!([]));
    for d in doc["degrees"].as_array().unwrap() {
        for e in d["entries"].as_array().unwrap() {
            assert_eq!(e["basis"].as_array().unwrap().len() as u64, e["dim"].as_u64().unwrap());
        }
    }
}

#[test]
fn harrison_examples() {
    let q = json(&run_on("harrison", "quadrant.json", &["--degree", "2,2"]));
    assert_eq!(q["diamond"].as_array().unwrap().len(), 3);
    assert_eq!(q["cohomology"][1], serde_json::json!({"q": 2, "dim": 0}));

    let a1 = json(&run_on("harrison", "a1.json", &["--degree", "2,0"]));
    assert_eq!(a1["diamond"], serde_json::json!([[1, 0]]));

    let zero = json(&run_on("harrison", "a1.json", &["--degree", "0,0", "--qmax", "2"]));
    assert_eq!(zero["diamond"], serde_json::json!([]));
    assert!(zero["cohomology"].as_array().unwrap().iter().all(|l| l["dim"] == 0));
}

#[test]
fn prime_field_from_input() {
    let doc = json(&run_on("t", "twisted_cubic.json", &["--box", "4"]));
    assert_eq!(doc["field"], "Z/32003");
    assert_eq!(total(&doc, 1), 2);
}

#[test]
fn exit_codes() {
    assert_eq!(code(&run_on("info", "broken.json", &[])), 2);
    assert_eq!(code(&run_on("info", "nonprimitive.json", &[])), 2);
    assert!(String::from_utf8_lossy(&run_on("info", "nonprimitive.json", &[]).stderr).contains("--primitivize"));
    assert_eq!(code(&run_on("info", "nonprimitive.json", &["--primitivize"])), 0);
    assert_eq!(code(&run_on("info", "line.json", &[])), 3);
    assert_eq!(code(&run_on("t", "a1.json", &["--degree", "1,2,3"])), 2);
    assert_eq!(code(&run_on("t", "a1.json", &["--box", "2:1,0:1"])), 2);
    assert_eq!(code(&run_on("t", "a1.json", &[])), 2);
    assert_eq!(code(&run_on("t", "flat.json", &["--degree", "1,1,1"])), 5);
    assert_eq!(code(&run_on("harrison", "flat.json", &["--degree", "1,1,1"])), 5);

    // the 2-face spanned by the first two rays is singular
    let cone = temp_input(r#"{"rank": 3, "rays": [[1, 0, 1], [1, 2, 1], [0, 0, 1]]}"#);
    let path = cone.path().to_str().unwrap();
    assert_eq!(code(&run(&["t", path, "--degree", "1,1,1", "--all-n"])), 5);
    assert_eq!(code(&run(&["t", path, "--degree", "1,1,1", "--n", "3"])), 5);
    assert_eq!(code(&run(&["t", path, "--degree", "1,1,1"])), 0);

    let field = temp_input(r#"{"rank": 2, "rays": [[1, 0], [0, 1]], "field": {"mod": 12}}"#);
    assert_eq!(code(&run(&["info", field.path().to_str().unwrap()])), 2);
    let unknown = temp_input(r#"{"rank": 2, "rays": [[1, 0], [0, 1]], "colour": "red"}"#);
    assert_eq!(code(&run(&["info", unknown.path().to_str().unwrap()])), 2);
}

#[test]
fn output_is_deterministic() {
    let path = data("quadric.json");
    let args = |w: &'static str| vec!["t", path.to_str().unwrap(), "--box", "0:2,0:2,0:2", "--verify", "--workers", w];
    let a = run(&args("1"));
    let b = run(&args("4"));
    let c = Command::new(env!("CARGO_BIN_EXE_toric-t"))
        .args(&args("1")[..5])
        .env("TORIC_T_WORKERS", "3")
        .output()
        .unwrap();
    assert!(a.status.success() && b.status.success() && c.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
    assert!(!String::from_utf8_lossy(&a.stdout).contains("timing"));
}

#[test]
fn text_format_has_the_same_dimensions() {
    let doc = json(&run_on("t", "quadric.json", &["--box", "0:2,0:2,-1:2"]));
    let text = String::from_utf8(run_on("t", "quadric.json", &["--box", "0:2,0:2,-1:2", "--format", "text"]).stdout).unwrap();
    for n in [1, 2] {
        assert!(text.contains(&format!("total T{n}: {}", total(&doc, n))), "{text}");
    }
    let rows = text.lines().filter(|l| l.starts_with('(')).count();
    let entries: usize = doc["degrees"].as_array().unwrap().iter().map(|d| d["entries"].as_array().unwrap().len()).sum();
    assert_eq!(rows, entries);
}

#[test]
fn timing_only_on_request() {
    let doc = json(&run_on("harrison", "quadrant.json", &["--degree", "2,2", "--timing"]));
    assert!(doc["timing"]["total_ms"].is_u64());
}
