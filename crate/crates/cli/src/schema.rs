//! Structural validation of reports against the shipped JSON schema.
//!
//! The validator covers exactly the keyword subset the schema file
//! uses: `type`, `enum`, `properties`, `required`,
//! `additionalProperties` (boolean form), `items` (single schema),
//! `anyOf`, and `minimum`. An empty schema accepts anything.

use serde_json::Value;

pub const SCHEMA_JSON: &str = include_str!("../../../schema/analysis-report.schema.json");

pub fn report_schema() -> Value {
    serde_json::from_str(SCHEMA_JSON).expect("shipped schema is valid JSON")
}

/// Validates `value` against `schema`, returning every violation as a
/// `path: message` string.
pub fn validate(schema: &Value, value: &Value) -> Vec<String> {
    let mut errors = Vec::new();
    check(schema, value, "$", &mut errors);
    errors
}

fn type_matches(name: &str, value: &Value) -> bool {
    match name {
        "object" => value.is_object(),
        "array" => value.is_array(),
        "string" => value.is_string(),
        "integer" => value.is_i64() || value.is_u64(),
        "number" => value.is_number(),
        "boolean" => value.is_boolean(),
        "null" => value.is_null(),
        _ => false,
    }
}

fn check(schema: &Value, value: &Value, path: &str, errors: &mut Vec<String>) {
    let Some(obj) = schema.as_object() else { return };

    if let Some(any_of) = obj.get("anyOf").and_then(Value::as_array) {
        let matched = any_of.iter().any(|s| {
            let mut scratch = Vec::new();
            check(s, value, path, &mut scratch);
            scratch.is_empty()
        });
        if !matched {
            errors.push(format!("{path}: matches no branch of anyOf"));
        }
        return;
    }

    if let Some(t) = obj.get("type") {
        let ok = match t {
            Value::String(name) => type_matches(name, value),
            Value::Array(names) => names
                .iter()
                .filter_map(Value::as_str)
                .any(|name| type_matches(name, value)),
            _ => true,
        };
        if !ok {
            errors.push(format!("{path}: expected type {t}, found {}", kind_of(value)));
            return;
        }
    }

    if let Some(allowed) = obj.get("enum").and_then(Value::as_array) {
        if !allowed.contains(value) {
            errors.push(format!("{path}: value {value} not in enum"));
        }
    }

    if let Some(min) = obj.get("minimum").and_then(Value::as_i64) {
        if let Some(n) = value.as_i64() {
            if n < min {
                errors.push(format!("{path}: {n} below minimum {min}"));
            }
        }
    }

    if let Some(map) = value.as_object() {
        if let Some(required) = obj.get("required").and_then(Value::as_array) {
            for key in required.iter().filter_map(Value::as_str) {
                if !map.contains_key(key) {
                    errors.push(format!("{path}: missing required key '{key}'"));
                }
            }
        }
        let props = obj.get("properties").and_then(Value::as_object);
        if let Some(props) = props {
            for (key, child) in map {
                if let Some(sub) = props.get(key) {
                    check(sub, child, &format!("{path}.{key}"), errors);
                }
            }
        }
        if obj.get("additionalProperties") == Some(&Value::Bool(false)) {
            for key in map.keys() {
                if props.is_none_or(|p| !p.contains_key(key)) {
                    errors.push(format!("{path}: unexpected key '{key}'"));
                }
            }
        }
    }

    if let (Some(items), Some(arr)) = (obj.get("items"), value.as_array()) {
        for (i, child) in arr.iter().enumerate() {
            check(items, child, &format!("{path}[{i}]"), errors);
        }
    }
}

fn kind_of(value: &Value) -> &'static str {
    match value {
        Value::Null => "null",
        Value::Bool(_) => "boolean",
        Value::Number(_) => "number",
        Value::String(_) => "string",
        Value::Array(_) => "array",
        Value::Object(_) => "object",
    }
}
