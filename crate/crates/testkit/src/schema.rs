//! A small JSON-schema checker covering exactly the subset our published
//! schemas use: `type`, `properties`, `required`, `additionalProperties`
//! (boolean form), `items`, `enum`, `pattern` (decimal-integer patterns
//! only), and `$ref` into `#/$defs`. Anything outside that subset is an
//! error, which keeps the schemas honest about what the checker verified.

use serde_json::Value;

const KNOWN_KEYS: &[&str] = &[
    "$schema",
    "$id",
    "$defs",
    "$ref",
    "title",
    "description",
    "type",
    "properties",
    "required",
    "additionalProperties",
    "items",
    "enum",
    "pattern",
];

/// Validate `instance` against `schema`, returning the first problem found
/// as a `path: message` string.
pub fn validate(schema: &Value, instance: &Value) -> Result<(), String> {
    check(schema, schema, instance, "$")
}

fn check(root: &Value, schema: &Value, instance: &Value, path: &str) -> Result<(), String> {
    let obj = schema
        .as_object()
        .ok_or_else(|| format!("{path}: schema node is not an object"))?;

    for key in obj.keys() {
        if !KNOWN_KEYS.contains(&key.as_str()) {
            return Err(format!("{path}: schema keyword `{key}` is outside the checked subset"));
        }
    }

    if let Some(reference) = obj.get("$ref") {
        let target = resolve_ref(root, reference, path)?;
        return check(root, target, instance, path);
    }

    if let Some(expected) = obj.get("type") {
        let name = expected
            .as_str()
            .ok_or_else(|| format!("{path}: `type` must be a string"))?;
        if !type_matches(name, instance) {
            return Err(format!("{path}: expected type `{name}`, got {}", brief(instance)));
        }
    }

    if let Some(options) = obj.get("enum") {
        let list = options
            .as_array()
            .ok_or_else(|| format!("{path}: `enum` must be an array"))?;
        if !list.contains(instance) {
            return Err(format!("{path}: value {} not in enum", brief(instance)));
        }
    }

    if let Some(pattern) = obj.get("pattern") {
        let pattern = pattern
            .as_str()
            .ok_or_else(|| format!("{path}: `pattern` must be a string"))?;
        let text = instance
            .as_str()
            .ok_or_else(|| format!("{path}: `pattern` applies only to strings"))?;
        if !pattern_matches(pattern, text, path)? {
            return Err(format!("{path}: `{text}` does not match `{pattern}`"));
        }
    }

    if let Some(props) = obj.get("properties") {
        let props = props
            .as_object()
            .ok_or_else(|| format!("{path}: `properties` must be an object"))?;
        if let Some(map) = instance.as_object() {
            for (name, subschema) in props {
                if let Some(value) = map.get(name) {
                    check(root, subschema, value, &format!("{path}.{name}"))?;
                }
            }
            if obj.get("additionalProperties") == Some(&Value::Bool(false)) {
                for name in map.keys() {
                    if !props.contains_key(name) {
                        return Err(format!("{path}: unexpected property `{name}`"));
                    }
                }
            }
        }
    }

    if let Some(required) = obj.get("required") {
        let names = required
            .as_array()
            .ok_or_else(|| format!("{path}: `required` must be an array"))?;
        let map = instance
            .as_object()
            .ok_or_else(|| format!("{path}: `required` applies only to objects"))?;
        for name in names {
            let name = name
                .as_str()
                .ok_or_else(|| format!("{path}: `required` entries must be strings"))?;
            if !map.contains_key(name) {
                return Err(format!("{path}: missing required property `{name}`"));
            }
        }
    }

    if let Some(items) = obj.get("items") {
        if let Some(values) = instance.as_array() {
            for (i, value) in values.iter().enumerate() {
                check(root, items, value, &format!("{path}[{i}]"))?;
            }
        }
    }

    Ok(())
}

fn resolve_ref<'a>(root: &'a Value, reference: &Value, path: &str) -> Result<&'a Value, String> {
    let text = reference
        .as_str()
        .ok_or_else(|| format!("{path}: `$ref` must be a string"))?;
    let name = text
        .strip_prefix("#/$defs/")
        .ok_or_else(|| format!("{path}: only `#/$defs/...` references are supported"))?;
    root.get("$defs")
        .and_then(|defs| defs.get(name))
        .ok_or_else(|| format!("{path}: unresolved reference `{text}`"))
}

fn brief(value: &Value) -> String {
    let text = value.to_string();
    if text.len() > 60 {
        format!("{}...", &text[..60])
    } else {
        text
    }
}

fn type_matches(name: &str, value: &Value) -> bool {
    match name {
        "object" => value.is_object(),
        "array" => value.is_array(),
        "string" => value.is_string(),
        "boolean" => value.is_boolean(),
        "null" => value.is_null(),
        "number" => value.is_number(),
        "integer" => value.as_i64().is_some() || value.as_u64().is_some(),
        _ => false,
    }
}

/// Matcher for the two decimal patterns the schemas use. Arbitrary regular
/// expressions are out of scope on purpose.
fn pattern_matches(pattern: &str, text: &str, path: &str) -> Result<bool, String> {
    match pattern {
        "^-?(0|[1-9][0-9]*)$" => Ok(is_decimal(text, true)),
        "^(0|[1-9][0-9]*)$" => Ok(is_decimal(text, false)),
        other => Err(format!("{path}: pattern `{other}` is outside the checked subset")),
    }
}

fn is_decimal(text: &str, signed: bool) -> bool {
    let digits = if signed {
        text.strip_prefix('-').unwrap_or(text)
    } else {
        text
    };
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return false;
    }
    digits == "0" || !digits.starts_with('0')
}
