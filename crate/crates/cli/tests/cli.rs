use std::process::{Command, Output};

use serde_json::{json, Value};

fn qortho(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qortho"))
        .args(args)
        .env_remove("QORTHO_FORMAT")
        .output()
        .expect("binary runs")
}

fn json_run(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let out = qortho(&full);
    let code = out.status.code().unwrap();
    let v: Value = serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("{args:?}: {e}\n{}", String::from_utf8_lossy(&out.stderr)));
    assert_schema(&v);
    (code, v)
}

fn schema() -> Value {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../report.schema.json");
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn assert_schema(v: &Value) {
    let validator = jsonschema::validator_for(&schema()).unwrap();
    let errors: Vec<String> = validator.iter_errors(v).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{errors:?}\n{v}");
}

fn check<'a>(report: &'a Value, name: &str) -> &'a Value {
    report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == name)
        .unwrap_or_else(|| panic!("no check {name} in {report}"))
}

#[test]
fn ybe_passes() {
    let (code, v) = json_run(&["ybe", "--n", "4"]);
    assert_eq!(code, 0);
    assert_eq!(v["command"], "ybe");
    assert_eq!(v["n"], 4);
    assert_eq!(check(&v, "ybe")["pass"], true);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["rmat", "--n", "2"][..],
        &["ybe", "--n", "13"],
        &["classify", "--n", "4", "--regime", "unit", "--base", "star"],
        &["classify", "--n", "4", "--regime", "real", "--autos", "dprime:+-"],
        &["classify", "--n", "5", "--regime", "real", "--autos", "dsecond:+++--"],
        &["plane-conj", "--n", "4", "--spec", "base:round"],
        &["frobnicate"],
    ] {
        let out = qortho(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
    }
}

#[test]
fn table_has_one_row_per_real_form() {
    let (code, v) = json_run(&["table", "--n", "6", "--regime", "real"]);
    assert_eq!(code, 0);
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 10);
    assert_eq!(rows[0]["label"], "SO(6,0)");
    assert_eq!(rows[0]["signature"], json!([6, 0]));
    assert_eq!(rows[0]["spec"]["base"], "star");
    let sostar = rows.iter().filter(|r| r["label"] == "SO*(6)").count();
    assert_eq!(sostar, 4);
    assert!(rows
        .iter()
        .filter(|r| r["label"] == "SO*(6)")
        .all(|r| r["signature"].is_null()));

    let (_, unit) = json_run(&["table", "--n", "5", "--regime", "unit"]);
    assert_eq!(unit.as_array().unwrap().len(), 1);
    assert_eq!(unit[0]["label"], "SO(3,2)");
}

#[test]
fn quotient_sign_and_negative_control() {
    for sign in ["plus", "minus"] {
        let (code, v) = json_run(&["quotient", "--sign", sign]);
        assert_eq!(code, 0, "{v}");
        assert_eq!(v["n"], 4);
    }
    let (code, v) = json_run(&["quotient", "--sign", "plus", "--unscaled"]);
    assert_eq!(code, 1);
    let embed = check(&v, "subplane-embedding");
    assert_eq!(embed["pass"], false);
    assert_eq!(embed["witness"][0]["relation"], json!([1, 3]));
}

#[test]
fn classify_reports_labels_and_failures() {
    let (code, v) = json_run(&["classify", "--n", "4", "--regime", "real", "--autos", "canonical"]);
    assert_eq!(code, 0);
    assert_eq!(v["regime"], "real");
    let c = check(&v, "classification");
    assert_eq!(c["data"]["label"], "SO(3,1)");
    assert_eq!(c["data"]["signature"], json!([3, 1]));

    let (code, v) = json_run(&["classify", "--n", "4", "--regime", "real", "--autos", "dsecond:++--"]);
    assert_eq!(code, 0);
    assert_eq!(check(&v, "classification")["data"]["label"], "SO*(4)");
    assert_eq!(check(&v, "sostar-transport")["pass"], true);

    let (code, v) = json_run(&["classify", "--n", "4", "--regime", "unit", "--autos", "dsecond:++--"]);
    assert_eq!(code, 1);
    assert_eq!(check(&v, "classification")["witness"]["reason"], "unclassifiable");
}

#[test]
fn plane_rule_dump_and_confluence() {
    let (code, v) = json_run(&["plane", "--n", "3", "--relations", "--confluence"]);
    assert_eq!(code, 0);
    let rules = &check(&v, "plane-relations")["data"];
    assert_eq!(rules.as_array().unwrap().len(), 3);
    assert_eq!(rules[0]["lhs"], json!([1, 2]));
    assert_eq!(rules[0]["rhs"][0], json!({ "word": [2, 1], "coeff": "1/1*s^2" }));
    assert_eq!(check(&v, "confluence")["pass"], true);

    let text = String::from_utf8(qortho(&["plane", "--n", "4", "--relations"]).stdout).unwrap();
    assert!(text.contains("x1 x2 -> [1/1*s^2] x2 x1"), "{text}");
}

#[test]
fn plane_conjugation_check() {
    let (code, v) = json_run(&[
        "plane-conj",
        "--n",
        "4",
        "--spec",
        "base:star;autos:canonical;regime:real",
        "--check",
    ]);
    assert_eq!(code, 0);
    let conj = check(&v, "plane-conjugation");
    assert_eq!(conj["data"]["images"][0], "[1/1*s^2] x4");
    assert_eq!(check(&v, "star-consistency")["pass"], true);

    let (code, v) = json_run(&[
        "plane-conj",
        "--n",
        "4",
        "--spec",
        "base:cross;autos:canonical",
        "--check",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["regime"], "unit");

    let (code, v) = json_run(&["plane-conj", "--n", "4", "--spec", "base:star;autos:dsecond:++--"]);
    assert_eq!(code, 1);
    assert_eq!(check(&v, "plane-conjugation")["pass"], false);
}

#[test]
fn verify_all_small_n() {
    for n in ["3", "4", "5"] {
        let (code, v) = json_run(&["verify-all", "--n", n]);
        assert_eq!(code, 0, "{v}");
        assert!(v["checks"].as_array().unwrap().len() > 10);
    }
}

#[test]
fn env_var_selects_json_and_output_is_deterministic() {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_qortho"))
            .args(["projectors", "--n", "4"])
            .env("QORTHO_FORMAT", "json")
            .output()
            .unwrap()
    };
    let (a, b) = (run(), run());
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_schema(&v);
    assert_eq!(check(&v, "pa-rank")["data"]["rank"], 6);
}

#[test]
fn text_output() {
    let out = qortho(&["ybe", "--n", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("ybe N=3\nPASS ybe\n"), "{text}");
    let table = String::from_utf8(qortho(&["table", "--n", "4", "--regime", "real"]).stdout).unwrap();
    assert!(table.trim_end().ends_with("5 real forms"), "{table}");
}

#[test]
fn rmat_json_matrix_dump() {
    let (code, v) = json_run(&["rmat", "--n", "3"]);
    assert_eq!(code, 0);
    let data = &check(&v, "metric-squares-to-identity")["data"];
    assert_eq!(data["rho"], json!(["1/2", "0", "-1/2"]));
    assert_eq!(data["metric"]["dim"], 3);
    assert_eq!(data["metric"]["entries"][0], json!([1, 3, "1/1*s^-1"]));
    assert_eq!(data["r"]["dim"], 9);
}

#[test]
fn schema_rejects_malformed_reports() {
    let validator = jsonschema::validator_for(&schema()).unwrap();
    let empty = json!({ "command": "ybe", "n": 4, "checks": [], "version": "0.1.0" });
    assert!(!validator.is_valid(&empty));
    let stray =
        json!({ "command": "ybe", "n": 4, "checks": [{ "name": "ybe", "pass": true }], "version": "0.1.0", "time": 1 });
    assert!(!validator.is_valid(&stray));
    let ok = json!({ "command": "ybe", "n": 4, "checks": [{ "name": "ybe", "pass": true }], "version": "0.1.0" });
    assert!(validator.is_valid(&ok));
}
