use std::io::Write;
use std::process::{Command, Stdio};

use serde_json::{json, Value};

fn pocoh(args: &[&str], stdin: &str) -> (i32, String, String) {
    let mut child = Command::new(env!("CARGO_BIN_EXE_pocoh"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn mat(ring: Value, rows: &[&[i64]], cols: usize) -> Value {
    let entries: Vec<Value> = rows.iter().flat_map(|r| r.iter().map(|v| json!([v.to_string(), "1"]))).collect();
    json!({"ring": ring, "rows": rows.len(), "cols": cols, "entries": entries})
}

fn zmat(rows: &[&[i64]]) -> Value {
    mat(json!("Z"), rows, rows[0].len())
}

/// Columns of a serialized matrix, as integers.
fn int_columns(m: &Value) -> Vec<Vec<i64>> {
    let rows = m["rows"].as_u64().unwrap() as usize;
    let cols = m["cols"].as_u64().unwrap() as usize;
    let e = m["entries"].as_array().unwrap();
    (0..cols)
        .map(|c| {
            (0..rows)
                .map(|r| {
                    let p = &e[r * cols + c];
                    assert_eq!(p[1], "1");
                    p[0].as_str().unwrap().parse().unwrap()
                })
                .collect()
        })
        .collect()
}

fn schema_errors(def: &str, instance: &Value) -> Vec<String> {
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/schemas/v1/pocoh.json")).unwrap();
    let file: Value = serde_json::from_str(&text).unwrap();
    let root = json!({
        "$schema": "https://json-schema.org/draft/2020-12/schema",
        "$defs": file["$defs"],
        "$ref": format!("#/$defs/{def}"),
    });
    let schema = jsonschema::JSONSchema::options()
        .with_draft(jsonschema::Draft::Draft202012)
        .compile(&root)
        .unwrap();
    let msgs = match schema.validate(instance) {
        Ok(()) => Vec::new(),
        Err(errors) => errors.map(|e| format!("{} at {}", e, e.instance_path)).collect(),
    };
    msgs
}

fn schema_check(def: &str, instance: &Value) {
    let msgs = schema_errors(def, instance);
    assert!(msgs.is_empty(), "{def} rejects {instance}: {msgs:?}");
}

#[test]
fn schema_rejects_malformed_documents() {
    let good = json!({"ring": "Z", "rows": 1, "cols": 1, "entries": [["1", "1"]], "nonneg": true});
    assert!(schema_errors("genset", &good).is_empty());
    let mut no_flag = good.clone();
    no_flag.as_object_mut().unwrap().remove("nonneg");
    assert!(!schema_errors("genset", &no_flag).is_empty());
    let mut float = good.clone();
    float["entries"] = json!([[1.5, "1"]]);
    assert!(!schema_errors("genset", &float).is_empty());
    assert!(!schema_errors("ring", &json!("R")).is_empty());
    assert!(!schema_errors("solve.input", &json!({"M": zmat(&[&[1]]), "bogus": 0})).is_empty());
}

/// Run a subcommand on `input`, check both sides against the schema and
/// return the parsed output.
fn run_ok(cmd: &str, input: Value) -> Value {
    schema_check(&format!("{cmd}.input"), &input);
    let (code, out, err) = pocoh(&["--quiet", cmd], &input.to_string());
    assert_eq!(code, 0, "{cmd} failed: {err}");
    assert!(err.is_empty(), "--quiet still wrote {err:?}");
    let v: Value = serde_json::from_str(&out).unwrap();
    schema_check(&format!("{cmd}.output"), &v);
    v
}

#[test]
fn hilbert_basis_of_one_inequality() {
    let v = run_ok("hilbert", json!({"M": zmat(&[&[2, -3]])}));
    assert_eq!(int_columns(&v["basis"]), vec![vec![1, 0], vec![2, 1], vec![3, 2]]);
    assert_eq!(v["box_certified"], 12);
    assert_eq!(v["basis"]["nonneg"], true);
}

#[test]
fn solve_over_each_ring() {
    let q = run_ok("solve", json!({"M": mat(json!("Q"), &[&[2, -3]], 2), "sign_cols": [0, 1]}));
    assert_eq!(int_columns(&q), vec![vec![1, 0], vec![3, 2]]);
    let z = run_ok("solve", json!({"M": zmat(&[&[2, -3]]), "sign_cols": [0, 1]}));
    assert_eq!(int_columns(&z), vec![vec![1, 0], vec![2, 1], vec![3, 2]]);
    let l = run_ok("localize", json!({"M": mat(json!({"Zloc": [2]}), &[&[2, -3]], 2), "sign_cols": [0, 1]}));
    assert_eq!(int_columns(&l), vec![vec![1, 0], vec![2, 1], vec![3, 2]]);
    assert_eq!(l["ring"], json!({"Zloc": [2]}));
}

#[test]
fn double_description_of_the_orthant() {
    let v = run_ok("dd", json!({"dim": 2, "hrep": zmat(&[&[1, 0], &[0, 1]])}));
    let mut rays = int_columns(&v["vrep"]);
    rays.sort();
    assert_eq!(rays, vec![vec![0, 1], vec![1, 0]]);
    assert_eq!(v["lineality"]["cols"], 0);
}

#[test]
fn field_equation_and_equation() {
    let v = run_ok("field-eq", json!({"p": [["2", "1"], ["-3", "1"]]}));
    assert_eq!(v["cols"], 1);
    assert_eq!(v["entries"], json!([["1", "2"], ["1", "3"]]));
    let v = run_ok("solve-eq", json!({"U": zmat(&[&[1, -1]])}));
    assert_eq!(int_columns(&v["gens"]), vec![vec![-1, -1], vec![1, 1]]);
}

#[test]
fn change_span_example_and_bad_witness() {
    let input = json!({
        "U": zmat(&[&[1]]),
        "V": zmat(&[&[2, 3]]),
        "M": zmat(&[&[2, 3]]),
        "N": zmat(&[&[-1], &[1]]),
        "S": {"ring": "Z", "rows": 1, "cols": 1, "entries": [["1", "1"]], "nonneg": false},
    });
    let v = run_ok("change-span", input.clone());
    let mut g = int_columns(&v);
    g.sort();
    assert_eq!(g, vec![vec![-3, 2], vec![-1, 1], vec![3, -2]]);
    let mut bad = input;
    bad["N"] = zmat(&[&[-1], &[2]]);
    let (code, _, err) = pocoh(&["change-span"], &bad.to_string());
    assert_eq!(code, 2, "{err}");
}

#[test]
fn intersect_quotient_matring() {
    let b = json!({"ring": "Z", "rows": 2, "cols": 2, "entries": [["2","1"],["0","1"],["0","1"],["1","1"]], "nonneg": true});
    let c = json!({"ring": "Z", "rows": 2, "cols": 2, "entries": [["1","1"],["0","1"],["0","1"],["2","1"]], "nonneg": true});
    let v = run_ok("intersect", json!({"b": b, "c": c}));
    assert_eq!(int_columns(&v), vec![vec![0, 2], vec![2, 0]]);
    run_ok("quotient", json!({"U": zmat(&[&[1, -1]]), "V": zmat(&[&[1, 0]])}));
    let v = run_ok("matring", json!({"a": [zmat(&[&[1]]), zmat(&[&[-1]])]}));
    assert_eq!(v["m"], 1);
}

#[test]
fn lgroup_commands() {
    let x = json!({"lin": [1]});
    let half = json!({"n": 1, "relators": [{"op": "meet", "args": [x, {"lin": [0]}]}]});
    let v = run_ok("lgroup-solve", json!({"presentation": half, "terms": [x, {"op": "neg", "args": [x]}]}));
    assert_eq!(int_columns(&v["basis"]), vec![vec![1, 0], vec![1, 1]]);

    // on x >= 0 the functions x ∨ 0 and x agree, x ∧ 0 and x do not
    let join = json!({"op": "join", "args": [x, {"lin": [0]}]});
    let v = run_ok("lgroup-eq", json!({"presentation": half, "f": join, "g": x}));
    assert_eq!(v["equal"], true);
    let meet = json!({"op": "meet", "args": [x, {"lin": [0]}]});
    let free = json!({"n": 1});
    let v = run_ok("lgroup-eq", json!({"presentation": free, "f": meet, "g": x}));
    assert_eq!(v["equal"], false);
}

#[test]
fn irrational_demo_sizes() {
    for (depth, sizes) in [(1, vec![2]), (2, vec![2, 3]), (3, vec![2, 3, 4])] {
        let (code, out, err) = pocoh(&["demo-irrational", "--depth", &depth.to_string()], "");
        assert_eq!(code, 0);
        assert!(err.contains("size"), "summary table missing: {err}");
        let v: Value = serde_json::from_str(&out).unwrap();
        schema_check("demo-irrational.output", &v);
        let got: Vec<u64> = v["rows"].as_array().unwrap().iter().map(|r| r["size"].as_u64().unwrap()).collect();
        assert_eq!(got, sizes);
    }
    assert_eq!(pocoh(&["demo-irrational", "--depth", "9"], "").0, 1);
}

#[test]
fn exit_codes() {
    assert_eq!(pocoh(&["--help"], "").0, 0);
    assert_eq!(pocoh(&["--version"], "").0, 0);
    assert_eq!(pocoh(&["frobnicate"], "").0, 1);
    assert_eq!(pocoh(&["solve"], "{not json").0, 1);
    let unknown_field = json!({"M": zmat(&[&[1]]), "sign_cols": [], "extra": 1});
    assert_eq!(pocoh(&["solve"], &unknown_field.to_string()).0, 1);
    let half = json!({"M": {"ring": "Z", "rows": 1, "cols": 1, "entries": [["1", "2"]]}, "sign_cols": []});
    assert_eq!(pocoh(&["solve"], &half.to_string()).0, 1);
    let (code, _, err) = pocoh(&["--completion-cap", "3", "hilbert"], &json!({"M": zmat(&[&[17, -12]])}).to_string());
    assert_eq!(code, 3, "{err}");
    assert_eq!(pocoh(&["hilbert", "/nonexistent/input.json"], "").0, 1);
}

#[test]
fn deterministic_output_and_out_file() {
    let input = json!({"M": zmat(&[&[3, 2, -2], &[3, -3, 0]]), "sign_cols": []}).to_string();
    let (c1, a, _) = pocoh(&["--quiet", "solve"], &input);
    let (c2, b, _) = pocoh(&["--quiet", "solve"], &input);
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(a, b);

    let dir = std::env::temp_dir().join(format!("pocoh-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let inp = dir.join("in.json");
    let outp = dir.join("out.json");
    std::fs::write(&inp, &input).unwrap();
    let (code, stdout, _) = pocoh(
        &["--quiet", "--out", outp.to_str().unwrap(), "solve", inp.to_str().unwrap()],
        "",
    );
    assert_eq!(code, 0);
    assert!(stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&outp).unwrap(), a);
    std::fs::remove_dir_all(&dir).unwrap();
}
