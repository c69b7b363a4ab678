//! Every subcommand's `--json` report is checked against
//! `docs/report.schema.json` by a small validator covering the keywords the
//! schema uses, and polynomial objects are re-parsed.

use fewnomial::parse_poly;
use fewnomial::report::{PolyJson, RunReport, TeichOut, WhiteheadOut};
use serde_json::Value;

fn schema() -> Value {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../docs/report.schema.json");
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn resolve<'a>(root: &'a Value, s: &'a Value) -> &'a Value {
    match s.get("$ref").and_then(Value::as_str) {
        Some(r) => {
            let name = r.strip_prefix("#/$defs/").expect("local ref");
            resolve(root, &root["$defs"][name])
        }
        None => s,
    }
}

fn type_ok(t: &str, v: &Value) -> bool {
    match t {
        "object" => v.is_object(),
        "array" => v.is_array(),
        "string" => v.is_string(),
        "integer" => v.is_i64() || v.is_u64(),
        "number" => v.is_number(),
        "boolean" => v.is_boolean(),
        "null" => v.is_null(),
        other => panic!("unsupported type {other}"),
    }
}

/// Returns the first violation as a JSON-pointer-like path.
fn check(root: &Value, s: &Value, v: &Value, path: &str) -> Result<(), String> {
    let s = resolve(root, s);
    if s == &Value::Bool(false) {
        return Err(format!("{path}: not allowed"));
    }
    let fail = |what: &str| Err(format!("{path}: {what}"));
    if let Some(t) = s.get("type").and_then(Value::as_str) {
        if !type_ok(t, v) {
            return fail(&format!("expected {t}"));
        }
    }
    if let Some(c) = s.get("const") {
        if c != v {
            return fail(&format!("expected {c}"));
        }
    }
    if let Some(e) = s.get("enum").and_then(Value::as_array) {
        if !e.contains(v) {
            return fail("not in enum");
        }
    }
    if let Some(min) = s.get("minimum").and_then(Value::as_f64) {
        if v.as_f64().is_some_and(|x| x < min) {
            return fail("below minimum");
        }
    }
    if let Some(p) = s.get("pattern").and_then(Value::as_str) {
        assert_eq!(p, "^-?[0-9]+$", "unsupported pattern");
        let t = v.as_str().unwrap_or("");
        let digits = t.strip_prefix('-').unwrap_or(t);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return fail("not an integer string");
        }
    }
    if let Some(obj) = v.as_object() {
        for k in s.get("required").and_then(Value::as_array).into_iter().flatten() {
            if !obj.contains_key(k.as_str().unwrap()) {
                return fail(&format!("missing {k}"));
            }
        }
        if let Some(props) = s.get("properties").and_then(Value::as_object) {
            for (k, sub) in props {
                if let Some(x) = obj.get(k) {
                    check(root, sub, x, &format!("{path}/{k}"))?;
                }
            }
        }
    }
    if let Some(items) = v.as_array() {
        let prefix = s.get("prefixItems").and_then(Value::as_array);
        let n = prefix.map_or(0, Vec::len);
        if let Some(min) = s.get("minItems").and_then(Value::as_u64) {
            if (items.len() as u64) < min {
                return fail("too few items");
            }
        }
        for (i, x) in items.iter().enumerate() {
            let sub = if i < n { &prefix.unwrap()[i] } else { s.get("items").unwrap_or(&Value::Bool(true)) };
            if sub != &Value::Bool(true) {
                check(root, sub, x, &format!("{path}/{i}"))?;
            }
        }
    }
    if let Some(alts) = s.get("oneOf").and_then(Value::as_array) {
        let ok = alts.iter().filter(|a| check(root, a, v, path).is_ok()).count();
        if ok != 1 {
            return fail(&format!("{ok} oneOf branches match"));
        }
    }
    Ok(())
}

fn run_json(args: &[&str]) -> (i32, Value) {
    let mut argv = vec!["fewnomial".to_string()];
    argv.extend(args.iter().map(|s| s.to_string()));
    argv.push("--json".into());
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = fewnomial::run(&argv, &mut out, &mut err);
    let text = String::from_utf8(out).unwrap();
    (code, serde_json::from_str(&text).unwrap_or_else(|e| panic!("{args:?}: {e}\n{text}")))
}

fn polys(v: &Value, out: &mut Vec<PolyJson>) {
    match v {
        Value::Object(m) => {
            if let Ok(p) = serde_json::from_value::<PolyJson>(v.clone()) {
                out.push(p);
            } else {
                m.values().for_each(|x| polys(x, out));
            }
        }
        Value::Array(a) => a.iter().for_each(|x| polys(x, out)),
        _ => {}
    }
}

const COMMANDS: &[&[&str]] = &[
    &["whitehead", "--m", "3", "--n", "2"],
    &["teich", "--a", "7", "--b", "2"],
    &["factor", "--poly", "-6*x^6+6*x^2"],
    &["mahler", "--poly", "x^3-x-1"],
    &["mahler", "--bivariate", "--grid", "128", "--poly", "x*y^2+x-x^2*y-y-x*y"],
    &["fmv-closure"],
    &["script-t"],
    &["sweep", "whitehead", "--m-list", "1,3", "--n-max", "4", "--no-timing"],
];

#[test]
fn reports_validate() {
    let root = schema();
    for args in COMMANDS {
        let (code, v) = run_json(args);
        assert_eq!(code, 0, "{args:?}");
        check(&root, &root, &v, "").unwrap_or_else(|e| panic!("{args:?}: {e}"));
    }
}

#[test]
fn validator_rejects_bad_reports() {
    let root = schema();
    let (_, mut v) = run_json(&["whitehead", "--m", "1", "--n", "1"]);
    v["outputs"]["fw"]["coeffs"][0] = Value::from("1.5");
    assert!(check(&root, &root, &v, "").is_err());
    let (_, mut v) = run_json(&["fmv-closure"]);
    v["outputs"].as_object_mut().unwrap().remove("J");
    assert!(check(&root, &root, &v, "").is_err());
    let (_, mut v) = run_json(&["script-t"]);
    v["command"] = Value::from("teich");
    assert!(check(&root, &root, &v, "").is_err());
}

#[test]
fn polynomial_objects_reparse() {
    for args in COMMANDS {
        let (_, v) = run_json(args);
        let mut ps = Vec::new();
        polys(&v["outputs"], &mut ps);
        for p in ps {
            let from_coeffs = p.to_poly().unwrap();
            assert_eq!(parse_poly(&p.text).unwrap(), from_coeffs, "{args:?}: {}", p.text);
            assert_eq!(from_coeffs.degree(), p.degree);
        }
    }
}

#[test]
fn typed_roundtrip() {
    let (_, v) = run_json(&["whitehead", "--m", "1", "--n", "1"]);
    let r: RunReport<WhiteheadOut> = serde_json::from_value(v.clone()).unwrap();
    assert_eq!(r.outputs.quotient.text, "x^4+x^3-x^2-x+1");
    assert_eq!(r.outputs.trace_field_degree, 2);
    assert_eq!(r.outputs.quotient_irreducibility.status, "irreducible");
    assert_eq!(serde_json::to_value(&r).unwrap(), v);

    let (_, v) = run_json(&["teich", "--a", "1", "--b", "6"]);
    let r: RunReport<TeichOut> = serde_json::from_value(v).unwrap();
    assert!(r.outputs.matches_prediction);
}

#[test]
fn fmv_summary_keys() {
    let (_, v) = run_json(&["fmv-closure"]);
    assert_eq!(v["outputs"]["J"], 5);
    assert_eq!(v["outputs"]["size"], 32);
}
