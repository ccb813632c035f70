//! Kernel and function file formats.
//!
//! Kernel JSON:
//! ```json
//! {"states": ["a", "b"], "matrix": [[0, -1], [-1, "-inf"]], "basepoint": "a"}
//! ```
//! Kernel CSV: a header row of labels (first cell ignored), then one row per
//! state starting with its label. The basepoint of a CSV kernel is its first
//! state. Functions are JSON objects mapping labels to values.

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::matrix::{KernelMatrix, Matrix, MaxPlusFunction};
use crate::value::MaxPlusValue;

#[derive(Serialize, Deserialize)]
struct KernelFile {
    states: Vec<String>,
    matrix: Vec<Vec<MaxPlusValue>>,
    basepoint: String,
}

pub fn kernel_from_json(text: &str) -> Result<KernelMatrix> {
    let file: KernelFile =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("kernel JSON: {e}")))?;
    let basepoint = file
        .states
        .iter()
        .position(|s| *s == file.basepoint)
        .ok_or_else(|| Error::Parse(format!("basepoint {:?} is not a state", file.basepoint)))?;
    KernelMatrix::new(file.states, Matrix::from_rows(file.matrix)?, basepoint)
}

pub fn kernel_to_json(k: &KernelMatrix) -> String {
    let file = KernelFile {
        states: k.states().to_vec(),
        matrix: k.matrix().to_rows(),
        basepoint: k.states()[k.basepoint()].clone(),
    };
    serde_json::to_string_pretty(&file).expect("kernel serializes")
}

pub fn kernel_from_csv(text: &str) -> Result<KernelMatrix> {
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
    let header = lines.next().ok_or_else(|| Error::Parse("empty kernel CSV".into()))?;
    let states: Vec<String> = header.split(',').skip(1).map(|s| s.trim().to_string()).collect();
    let mut rows = Vec::with_capacity(states.len());
    for (i, line) in lines.enumerate() {
        let mut cells = line.split(',');
        let label = cells.next().unwrap_or("").trim();
        if states.get(i).map(String::as_str) != Some(label) {
            return Err(Error::Parse(format!(
                "row {} is labeled {label:?}, expected {:?}",
                i + 1,
                states.get(i)
            )));
        }
        rows.push(cells.map(str::parse).collect::<Result<Vec<MaxPlusValue>>>()?);
    }
    if rows.len() != states.len() {
        return Err(Error::DimensionMismatch { expected: states.len(), found: rows.len() });
    }
    KernelMatrix::new(states, Matrix::from_rows(rows)?, 0)
}

pub fn kernel_to_csv(k: &KernelMatrix) -> String {
    matrix_to_csv(k.states(), k.matrix())
}

pub fn matrix_to_csv(states: &[String], m: &Matrix) -> String {
    let mut out = String::new();
    out.push_str(&std::iter::once("").chain(states.iter().map(String::as_str)).collect::<Vec<_>>().join(","));
    out.push('\n');
    for (label, row) in states.iter().zip(m.rows()) {
        out.push_str(label);
        for v in row {
            out.push(',');
            out.push_str(&v.to_string());
        }
        out.push('\n');
    }
    out
}

/// Parses a `{label: value}` object against the kernel's state order.
/// Every state must be present.
pub fn function_from_json(text: &str, states: &[String]) -> Result<MaxPlusFunction> {
    let obj: Map<String, Value> =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("function JSON: {e}")))?;
    if let Some(extra) = obj.keys().find(|k| !states.contains(k)) {
        return Err(Error::Parse(format!("function mentions unknown state {extra:?}")));
    }
    states
        .iter()
        .map(|s| {
            let v = obj
                .get(s)
                .ok_or_else(|| Error::Parse(format!("function has no value for state {s:?}")))?;
            serde_json::from_value::<MaxPlusValue>(v.clone())
                .map_err(|e| Error::Parse(format!("value for {s:?}: {e}")))
        })
        .collect()
}

/// Labels in state order.
pub fn function_to_json_value(f: &MaxPlusFunction, states: &[String]) -> Value {
    let mut obj = Map::new();
    for (s, v) in states.iter().zip(f.iter()) {
        obj.insert(s.clone(), serde_json::to_value(v).expect("value serializes"));
    }
    Value::Object(obj)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::value::{Finite, NegInf};

    const SAMPLE: &str = r#"{"states": ["a", "b"], "matrix": [[0, -1.5], ["-INF", 0]], "basepoint": "b"}"#;

    #[test]
    fn json_kernel() {
        let k = kernel_from_json(SAMPLE).unwrap();
        assert_eq!(k.basepoint(), 1);
        assert_eq!(k.get(1, 0), NegInf);
        assert_eq!(k.get(0, 1), Finite(-1.5));
        let back = kernel_from_json(&kernel_to_json(&k)).unwrap();
        assert_eq!(back, k);
    }

    #[test]
    fn json_kernel_errors() {
        assert!(kernel_from_json(r#"{"states": ["a"], "matrix": [[0]], "basepoint": "z"}"#).is_err());
        assert!(kernel_from_json(r#"{"states": ["a"], "matrix": [[0, 1]], "basepoint": "a"}"#).is_err());
        assert!(kernel_from_json(r#"{"states": ["a"], "matrix": [["x"]], "basepoint": "a"}"#).is_err());
    }

    #[test]
    fn csv_kernel() {
        let text = ",x,y\nx,0,-inf\ny,-2,-1\n";
        let k = kernel_from_csv(text).unwrap();
        assert_eq!(k.states(), &["x".to_string(), "y".to_string()]);
        assert_eq!(k.get(0, 1), NegInf);
        assert_eq!(kernel_to_csv(&k), text);
        assert!(kernel_from_csv(",x,y\ny,0,0\nx,0,0\n").is_err());
        assert!(kernel_from_csv(",x,y\nx,0,0\n").is_err());
    }

    #[test]
    fn functions() {
        let states = vec!["a".to_string(), "b".to_string()];
        let f = function_from_json(r#"{"b": "-inf", "a": 2}"#, &states).unwrap();
        assert_eq!(f, MaxPlusFunction(vec![Finite(2.0), NegInf]));
        let v = function_to_json_value(&f, &states);
        assert_eq!(v.to_string(), r#"{"a":2,"b":"-inf"}"#);
        assert!(function_from_json(r#"{"a": 1}"#, &states).is_err());
        assert!(function_from_json(r#"{"a": 1, "b": 1, "c": 1}"#, &states).is_err());
    }
}
