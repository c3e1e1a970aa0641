//! Canonical JSON rendering.
//!
//! Values go through `serde_json::Value`, whose maps are ordered, so keys come
//! out sorted and output is byte-stable.

use serde::Serialize;
use serde_json::{Map, Number, Value};

use crate::exactla::rational::{parse_exact, to_f64};

pub fn canonical<T: Serialize>(value: &T, approx: bool) -> serde_json::Result<String> {
    let mut v = serde_json::to_value(value)?;
    if approx {
        annotate(&mut v);
    }
    serde_json::to_string(&v)
}

fn as_decimal(s: &str) -> Option<Value> {
    if s.is_empty()
        || !s
            .bytes()
            .all(|b| b.is_ascii_digit() || b == b'/' || b == b'-')
    {
        return None;
    }
    let r = parse_exact(s).ok()?;
    Number::from_f64(to_f64(&r)).map(Value::Number)
}

fn decimals(v: &Value) -> Option<Value> {
    match v {
        Value::String(s) => as_decimal(s),
        Value::Array(items) if !items.is_empty() => items
            .iter()
            .map(|x| x.as_str().and_then(as_decimal))
            .collect::<Option<Vec<_>>>()
            .map(Value::Array),
        _ => None,
    }
}

/// Adds `<key>_approx` next to every exact rational (or list of them).
fn annotate(v: &mut Value) {
    match v {
        Value::Object(map) => {
            let mut extra = Map::new();
            for (k, child) in map.iter_mut() {
                if let Some(d) = decimals(child) {
                    extra.insert(format!("{k}_approx"), d);
                } else {
                    annotate(child);
                }
            }
            map.extend(extra);
        }
        Value::Array(items) => items.iter_mut().for_each(annotate),
        _ => {}
    }
}
