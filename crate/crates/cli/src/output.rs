use std::path::Path;

use anyhow::Context;
use maxplus_core::value::round_sig12;
use serde_json::{Number, Value};

use crate::Output;

/// Rounds every float to 12 significant digits; integral values become
/// integers so `-2.0` prints as `-2`.
pub fn normalize_numbers(v: Value) -> Value {
    match v {
        Value::Number(n) => match n.as_f64() {
            Some(f) if !n.is_i64() && !n.is_u64() => number(f),
            _ => Value::Number(n),
        },
        Value::Array(items) => Value::Array(items.into_iter().map(normalize_numbers).collect()),
        Value::Object(map) => {
            Value::Object(map.into_iter().map(|(k, v)| (k, normalize_numbers(v))).collect())
        }
        other => other,
    }
}

pub fn number(f: f64) -> Value {
    if !f.is_finite() {
        return Value::String(if f > 0.0 { "+inf" } else if f < 0.0 { "-inf" } else { "nan" }.into());
    }
    let r = round_sig12(f);
    if r.fract() == 0.0 && r.abs() < 1e15 {
        return Value::Number((r as i64).into());
    }
    Number::from_f64(r).map_or(Value::Null, Value::Number)
}

pub fn emit_json(out: &Output, value: Value) -> anyhow::Result<()> {
    let text = serde_json::to_string_pretty(&normalize_numbers(value))? + "\n";
    emit_text(out, &text)
}

pub fn emit_text(out: &Output, text: &str) -> anyhow::Result<()> {
    match &out.out {
        Some(path) => write_file(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

pub fn write_file(path: &Path, text: &str) -> anyhow::Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}
