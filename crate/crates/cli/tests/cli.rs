use std::process::{Command, Output};

use klatlas::run::{EXIT_CHECK_FAILURE, EXIT_CONFIG, EXIT_EXTRACTION_CAP};
use klatlas::{exit_code, run, Format, RawConfig};
use serde_json::Value;

fn klatlas(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_klatlas")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn enumerate_reports_schema_fields() {
    let out = klatlas(&["enumerate", "--n", "4", "--J", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["tool"]["name"], "klatlas");
    assert_eq!(v["tool"]["version"], env!("CARGO_PKG_VERSION"));
    assert_eq!(v["command"], "enumerate");
    assert_eq!(v["input_hash"].as_str().unwrap().len(), 64);
    assert_eq!(v["config"]["J"], serde_json::json!([2]));
    assert_eq!(v["config"]["lambda"], serde_json::json!([1, 0, 0, -1]));
    let e = &v["enumeration"];
    assert_eq!(e["dimension"], 5);
    assert_eq!(e["min_coset_reps"].as_array().unwrap().len(), 12);
    assert_eq!(e["bottom_label"], "[0,2,3,5]");
    assert_eq!(v["charts"].as_array().unwrap().len(), 12);
    for key in ["pass", "fail", "extraction_capped", "seeds"] {
        assert!(v["summary"].get(key).is_some(), "summary.{key}");
    }
}

#[test]
fn no_timing_in_json() {
    let out = klatlas(&["verify-lemmas", "--n", "3", "--samples", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(!text.contains("time") && !text.contains("elapsed"));
    assert!(String::from_utf8(out.stderr).unwrap().contains("finished in"));
}

#[test]
fn config_errors_exit_with_config_code() {
    for args in [
        &["enumerate", "--n", "4", "--J", "5"][..],
        &["enumerate", "--n", "4", "--J", "2", "--lambda", "1,1,0,-2"],
        &["enumerate", "--n", "9"],
        &["divisors", "--n", "4", "--J", "2", "--charts", "2413"],
        &["verify-theorem", "--n", "4", "--samples", "0"],
    ] {
        let out = klatlas(args);
        assert_eq!(out.status.code(), Some(EXIT_CONFIG), "{args:?}");
        assert!(out.stdout.is_empty());
        assert!(String::from_utf8(out.stderr).unwrap().contains("invalid configuration"));
    }
}

#[test]
fn degree_cap_is_reported_separately() {
    // the chart carries a quadratic divisor, so a linear cap cannot fit it
    let out = klatlas(&["divisors", "--n", "4", "--J", "2", "--charts", "4123", "--degree-cap", "1"]);
    assert_eq!(out.status.code(), Some(EXIT_EXTRACTION_CAP));
    let v = json(&out);
    let s = &v["summary"];
    assert!(s["fail"].as_u64().unwrap() > 0);
    assert_eq!(s["fail"], s["extraction_capped"]);
}

#[test]
fn check_failures_have_their_own_code() {
    let config = RawConfig {
        n: 3,
        j: String::new(),
        lambda: "minimal".into(),
        charts: "all".into(),
        samples: 2,
        seed: 1,
        degree_cap: 4,
        format: Format::Json,
    }
    .validate()
    .unwrap();
    let mut report = run(klatlas::Command::VerifyLemmas, &config).unwrap();
    assert_eq!(exit_code(&report), 0);
    report.checks[0].failures.push("injected".into());
    report.tally();
    assert_eq!(exit_code(&report), EXIT_CHECK_FAILURE);
}

#[test]
fn input_hash_tracks_config() {
    let hash = |seed: &str| {
        json(&klatlas(&["enumerate", "--n", "3", "--seed", seed]))["input_hash"].as_str().unwrap().to_string()
    };
    assert_eq!(hash("7"), hash("7"));
    assert_ne!(hash("7"), hash("8"));
}

#[test]
fn reports_are_byte_identical_and_seed_sensitive() {
    let args = |seed| ["verify-theorem", "--n", "4", "--J", "1,3", "--samples", "10", "--seed", seed];
    let a = klatlas(&args("3"));
    let b = klatlas(&args("3"));
    let c = klatlas(&args("4"));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn table_format_lists_the_summary() {
    let out = klatlas(&["verify-theorem", "--n", "3", "--samples", "4", "--format", "table"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(serde_json::from_str::<Value>(&text).is_err());
    assert!(text.contains("pass"));
}

/// Checks `required`, `additionalProperties: false`, `const`, `enum` and
/// nested `$ref`s of the shipped schema; enough to catch field drift.
fn conforms(v: &Value, s: &Value, root: &Value, path: &str) -> Result<(), String> {
    if let Some(r) = s.get("$ref").and_then(Value::as_str) {
        let name = r.trim_start_matches("#/$defs/");
        return conforms(v, &root["$defs"][name], root, path);
    }
    if let Some(alts) = s.get("oneOf").and_then(Value::as_array) {
        return if alts.iter().any(|a| conforms(v, a, root, path).is_ok()) {
            Ok(())
        } else {
            Err(format!("{path}: no alternative matches {v}"))
        };
    }
    if let Some(c) = s.get("const") {
        return if v == c { Ok(()) } else { Err(format!("{path}: {v} != {c}")) };
    }
    if let Some(e) = s.get("enum").and_then(Value::as_array) {
        return if e.contains(v) { Ok(()) } else { Err(format!("{path}: {v} not in enum")) };
    }
    match s.get("type").and_then(Value::as_str) {
        Some("object") => {
            let obj = v.as_object().ok_or(format!("{path}: not an object"))?;
            let props = s["properties"].as_object().cloned().unwrap_or_default();
            for key in s["required"].as_array().into_iter().flatten() {
                let key = key.as_str().unwrap();
                if !obj.contains_key(key) {
                    return Err(format!("{path}: missing {key}"));
                }
            }
            for (key, val) in obj {
                let sub = props.get(key).ok_or(format!("{path}: unexpected {key}"))?;
                conforms(val, sub, root, &format!("{path}.{key}"))?;
            }
            Ok(())
        }
        Some("array") => {
            let items = v.as_array().ok_or(format!("{path}: not an array"))?;
            items.iter().enumerate().try_for_each(|(i, x)| conforms(x, &s["items"], root, &format!("{path}[{i}]")))
        }
        Some("string") if !v.is_string() => Err(format!("{path}: not a string")),
        Some("integer") if !(v.is_i64() || v.is_u64()) => Err(format!("{path}: not an integer")),
        Some("boolean") if !v.is_boolean() => Err(format!("{path}: not a boolean")),
        Some("null") if !v.is_null() => Err(format!("{path}: not null")),
        _ => Ok(()),
    }
}

#[test]
fn reports_follow_the_shipped_schema() {
    let schema: Value =
        serde_json::from_str(include_str!(concat!(env!("CARGO_MANIFEST_DIR"), "/../../docs/report.schema.json"))).unwrap();
    for args in [
        &["enumerate", "--n", "4", "--J", "1,3", "--lambda", "1,1,-1,-1", "--charts", "1324"][..],
        &["verify-lemmas", "--n", "3", "--samples", "3"],
        &["verify-theorem", "--n", "4", "--J", "2", "--samples", "3"],
        &["divisors", "--n", "4", "--J", "2", "--charts", "4123"],
    ] {
        let v = json(&klatlas(args));
        conforms(&v, &schema, &schema, "$").unwrap_or_else(|e| panic!("{args:?}: {e}"));
    }
    let mut broken = json(&klatlas(&["enumerate", "--n", "3"]));
    broken["summary"]["extra"] = Value::Bool(true);
    assert!(conforms(&broken, &schema, &schema, "$").is_err());
}
