//! Path-tracking readers over `serde_json::Value`.

use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::kernel::rational::{format_q, parse_q, Q};

pub(crate) fn parse_text(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| {
        Error::schema(
            format!("line {} column {}", e.line(), e.column()),
            e.to_string(),
        )
    })
}

pub(crate) fn object<'a>(v: &'a Value, path: &str) -> Result<&'a Map<String, Value>> {
    v.as_object()
        .ok_or_else(|| Error::schema(path, "expected an object"))
}

pub(crate) fn array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>> {
    v.as_array()
        .ok_or_else(|| Error::schema(path, "expected an array"))
}

pub(crate) fn field<'a>(m: &'a Map<String, Value>, key: &str, path: &str) -> Result<&'a Value> {
    m.get(key)
        .ok_or_else(|| Error::schema(path, format!("missing field {key:?}")))
}

/// A rational given as a `"p/q"` string or a JSON integer.
pub(crate) fn rational(v: &Value, path: &str) -> Result<Q> {
    match v {
        Value::String(s) => parse_q(s).map_err(|e| match e {
            Error::NonRational(s) => Error::NonRational(format!("{s} at {path}")),
            other => other,
        }),
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(Q::from_integer(i.into()))
            } else if let Some(u) = n.as_u64() {
                Ok(Q::from_integer(u.into()))
            } else {
                Err(Error::NonRational(format!("{n} at {path}")))
            }
        }
        _ => Err(Error::schema(path, "expected a rational \"p/q\" string")),
    }
}

pub(crate) fn vector(v: &Value, path: &str) -> Result<Vec<Q>> {
    array(v, path)?
        .iter()
        .enumerate()
        .map(|(i, x)| rational(x, &format!("{path}[{i}]")))
        .collect()
}

pub(crate) fn matrix(v: &Value, path: &str) -> Result<Vec<Vec<Q>>> {
    array(v, path)?
        .iter()
        .enumerate()
        .map(|(i, x)| vector(x, &format!("{path}[{i}]")))
        .collect()
}

pub(crate) fn check_len(xs: &[Vec<Q>], d: usize) -> Result<()> {
    match xs.iter().find(|x| x.len() != d) {
        Some(x) => Err(Error::DimensionMismatch {
            expected: d,
            found: x.len(),
        }),
        None => Ok(()),
    }
}

pub(crate) fn q_value(x: &Q) -> Value {
    Value::String(format_q(x))
}

pub(crate) fn vec_value(xs: &[Q]) -> Value {
    Value::Array(xs.iter().map(q_value).collect())
}

pub(crate) fn mat_value(xs: &[Vec<Q>]) -> Value {
    Value::Array(xs.iter().map(|x| vec_value(x)).collect())
}
