//! Canonical serialization for machine-readable outputs.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;

use crate::error::{Error, Result};

/// Rounds to six significant digits.
pub fn round_sig6(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.5e}").parse().unwrap_or(x)
}

/// Six-significant-digit rendering used in CSV cells.
pub fn sig6(x: f64) -> String {
    let r = round_sig6(x);
    if r == 0.0 {
        "0".to_string()
    } else {
        format!("{r}")
    }
}

/// Rewrites every float in `value` to six significant digits and every object
/// to sorted-key order.
pub fn canonicalize(value: Value) -> Value {
    match value {
        Value::Number(n) if n.is_f64() => {
            let x = round_sig6(n.as_f64().unwrap_or_default());
            serde_json::Number::from_f64(x).map(Value::Number).unwrap_or(Value::Null)
        }
        Value::Array(items) => Value::Array(items.into_iter().map(canonicalize).collect()),
        Value::Object(map) => {
            let sorted: BTreeMap<String, Value> =
                map.into_iter().map(|(k, v)| (k, canonicalize(v))).collect();
            Value::Object(sorted.into_iter().collect())
        }
        other => other,
    }
}

/// Canonical JSON: sorted keys, six significant digits, two-space indent, trailing newline.
pub fn to_canonical_json<T: Serialize>(value: &T) -> Result<String> {
    let v = serde_json::to_value(value).map_err(|e| Error::Data(e.to_string()))?;
    let mut s = serde_json::to_string_pretty(&canonicalize(v)).map_err(|e| Error::Data(e.to_string()))?;
    s.push('\n');
    Ok(s)
}
