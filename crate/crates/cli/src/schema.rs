//! Wire-format schemas and a small validator for them. The documents under
//! `schemas/` pin every JSON shape the command line emits; the validator
//! covers exactly the keywords those documents use (`type`, `properties`,
//! `required`, `additionalProperties: false`, `items`, `enum`, `minimum`),
//! so schema drift fails tests instead of silently changing the format.

use serde_json::Value;

pub const SEARCH_RESULT: &str = include_str!("../schemas/search_result.json");
pub const CONJECTURE_ROWS: &str = include_str!("../schemas/conjecture_rows.json");
pub const CHASE_REPORT: &str = include_str!("../schemas/chase_report.json");
pub const PARAM_REPORT: &str = include_str!("../schemas/param_report.json");
pub const CHECK_FREE: &str = include_str!("../schemas/check_free.json");
pub const CONSTRUCT_REPORT: &str = include_str!("../schemas/construct_report.json");
pub const COLORING_CLAIM: &str = include_str!("../schemas/coloring_claim.json");
pub const MANIFEST: &str = include_str!("../schemas/manifest.json");
pub const FORMULAS: &str = include_str!("../schemas/formulas.json");

pub const ALL: [(&str, &str); 9] = [
    ("search_result", SEARCH_RESULT),
    ("conjecture_rows", CONJECTURE_ROWS),
    ("chase_report", CHASE_REPORT),
    ("param_report", PARAM_REPORT),
    ("check_free", CHECK_FREE),
    ("construct_report", CONSTRUCT_REPORT),
    ("coloring_claim", COLORING_CLAIM),
    ("manifest", MANIFEST),
    ("formulas", FORMULAS),
];

fn type_of(v: &Value) -> &'static str {
    match v {
        Value::Null => "null",
        Value::Bool(_) => "boolean",
        Value::Number(n) => {
            if n.is_u64() || n.is_i64() {
                "integer"
            } else {
                "number"
            }
        }
        Value::String(_) => "string",
        Value::Array(_) => "array",
        Value::Object(_) => "object",
    }
}

fn type_matches(want: &str, v: &Value) -> bool {
    match want {
        // every integer is a number
        "number" => matches!(v, Value::Number(_)),
        other => type_of(v) == other,
    }
}

fn check_type(schema: &Value, value: &Value, path: &str) -> Result<(), String> {
    let Some(ty) = schema.get("type") else { return Ok(()) };
    let ok = match ty {
        Value::String(one) => type_matches(one, value),
        Value::Array(options) => options
            .iter()
            .any(|o| o.as_str().is_some_and(|s| type_matches(s, value))),
        _ => return Err(format!("{path}: malformed schema `type` keyword")),
    };
    if ok {
        Ok(())
    } else {
        Err(format!("{path}: expected type {ty}, got {}", type_of(value)))
    }
}

/// Validates `value` against the schema subset. Returns the first failure
/// as `"<json path>: <what>"`.
pub fn validate(schema: &Value, value: &Value) -> Result<(), String> {
    validate_at(schema, value, "$")
}

fn validate_at(schema: &Value, value: &Value, path: &str) -> Result<(), String> {
    check_type(schema, value, path)?;

    if let Some(allowed) = schema.get("enum") {
        let options = allowed
            .as_array()
            .ok_or_else(|| format!("{path}: malformed schema `enum` keyword"))?;
        if !options.contains(value) {
            return Err(format!("{path}: {value} is not one of {allowed}"));
        }
    }

    if let Some(min) = schema.get("minimum").and_then(Value::as_f64) {
        if let Some(x) = value.as_f64() {
            if x < min {
                return Err(format!("{path}: {x} is below the minimum {min}"));
            }
        }
    }

    if let Value::Object(fields) = value {
        if let Some(required) = schema.get("required").and_then(Value::as_array) {
            for name in required {
                let name = name
                    .as_str()
                    .ok_or_else(|| format!("{path}: malformed schema `required` keyword"))?;
                if !fields.contains_key(name) {
                    return Err(format!("{path}: missing required field `{name}`"));
                }
            }
        }
        let props = schema.get("properties").and_then(Value::as_object);
        if let Some(props) = props {
            for (name, sub) in props {
                if let Some(v) = fields.get(name) {
                    validate_at(sub, v, &format!("{path}.{name}"))?;
                }
            }
        }
        if schema.get("additionalProperties") == Some(&Value::Bool(false)) {
            for name in fields.keys() {
                if !props.is_some_and(|p| p.contains_key(name)) {
                    return Err(format!("{path}: unexpected field `{name}`"));
                }
            }
        }
    }

    if let (Value::Array(items), Some(sub)) = (value, schema.get("items")) {
        for (i, v) in items.iter().enumerate() {
            validate_at(sub, v, &format!("{path}[{i}]"))?;
        }
    }

    Ok(())
}

/// Parses a bundled schema by short name.
pub fn load(name: &str) -> Option<Value> {
    ALL.iter()
        .find(|(k, _)| *k == name)
        .map(|(_, text)| serde_json::from_str(text).expect("bundled schemas parse"))
}
