//! Validator for the JSON Schema keywords used by the checked-in schemas:
//! `type`, `enum`, `required`, `properties`, `patternProperties` (digit
//! patterns only), `additionalProperties: false`, `items`, `minimum`,
//! `oneOf`, `not` and local `$ref`s into `$defs`.

use serde_json::Value;

pub fn validate(schema: &Value, v: &Value) -> Vec<String> {
    let mut errors = Vec::new();
    check(schema, schema, v, "$", &mut errors);
    errors
}

fn type_matches(name: &str, v: &Value) -> bool {
    match name {
        "object" => v.is_object(),
        "array" => v.is_array(),
        "string" => v.is_string(),
        "boolean" => v.is_boolean(),
        "null" => v.is_null(),
        "integer" => v.is_i64() || v.is_u64(),
        "number" => v.is_number(),
        other => panic!("unsupported type {other}"),
    }
}

fn digits_only(pattern: &str) -> bool {
    assert_eq!(pattern, "^[0-9]+$", "unsupported pattern");
    true
}

fn check(root: &Value, s: &Value, v: &Value, at: &str, errors: &mut Vec<String>) {
    if let Some(r) = s.get("$ref").and_then(Value::as_str) {
        let name = r.strip_prefix("#/$defs/").expect("local $defs reference");
        return check(root, &root["$defs"][name], v, at, errors);
    }
    if let Some(t) = s.get("type") {
        let ok = match t {
            Value::String(name) => type_matches(name, v),
            Value::Array(names) => names.iter().any(|n| type_matches(n.as_str().unwrap(), v)),
            _ => panic!("bad type keyword"),
        };
        if !ok {
            errors.push(format!("{at}: expected type {t}, got {v}"));
            return;
        }
    }
    if let Some(options) = s.get("enum").and_then(Value::as_array) {
        if !options.contains(v) {
            errors.push(format!("{at}: {v} not in {options:?}"));
        }
    }
    if let (Some(min), Some(x)) = (s.get("minimum").and_then(Value::as_f64), v.as_f64()) {
        if x < min {
            errors.push(format!("{at}: {x} < {min}"));
        }
    }
    if let Some(obj) = v.as_object() {
        if let Some(req) = s.get("required").and_then(Value::as_array) {
            for k in req.iter().filter_map(Value::as_str) {
                if !obj.contains_key(k) {
                    errors.push(format!("{at}: missing {k}"));
                }
            }
        }
        let props = s.get("properties").and_then(Value::as_object);
        let patterns = s.get("patternProperties").and_then(Value::as_object);
        for (k, x) in obj {
            let here = format!("{at}.{k}");
            let mut known = false;
            if let Some(sub) = props.and_then(|p| p.get(k)) {
                known = true;
                check(root, sub, x, &here, errors);
            }
            for (pat, sub) in patterns.into_iter().flatten() {
                if digits_only(pat) && !k.is_empty() && k.bytes().all(|b| b.is_ascii_digit()) {
                    known = true;
                    check(root, sub, x, &here, errors);
                }
            }
            if !known && s.get("additionalProperties") == Some(&Value::Bool(false)) {
                errors.push(format!("{here}: not allowed"));
            }
        }
    }
    if let (Some(items), Some(arr)) = (s.get("items"), v.as_array()) {
        for (i, x) in arr.iter().enumerate() {
            check(root, items, x, &format!("{at}[{i}]"), errors);
        }
    }
    if let Some(options) = s.get("oneOf").and_then(Value::as_array) {
        let hits = options.iter().filter(|o| validate_at(root, o, v)).count();
        if hits != 1 {
            errors.push(format!("{at}: matches {hits} oneOf branches"));
        }
    }
    if let Some(neg) = s.get("not") {
        if validate_at(root, neg, v) {
            errors.push(format!("{at}: matches a forbidden schema"));
        }
    }
}

fn validate_at(root: &Value, s: &Value, v: &Value) -> bool {
    let mut e = Vec::new();
    check(root, s, v, "$", &mut e);
    e.is_empty()
}
