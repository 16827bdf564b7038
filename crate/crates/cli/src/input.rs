use std::collections::BTreeSet;
use std::path::Path;

use serde_json::{Map, Value};

use crate::CliError;

/// One parsed problem description. Field names and lengths are checked
/// here, before any numeric construction; value-level rules (finiteness,
/// nonzero off-diagonals) stay with the core types.
pub(crate) enum InstanceFile {
    General {
        n: usize,
        a: Vec<f64>,
        b: Vec<f64>,
        c: Vec<f64>,
    },
    Toeplitz {
        alpha: f64,
        beta: f64,
        gamma: f64,
        size: usize,
    },
    Symmetric {
        alpha: f64,
        beta: f64,
        size: usize,
    },
}

fn schema_err(path: &Path, msg: &str) -> CliError {
    CliError::invalid(format!("{}: schema error: {msg}", path.display()))
}

fn read_object(path: &Path) -> Result<Map<String, Value>, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::invalid(format!("cannot read {}: {e}", path.display())))?;
    let value: Value = serde_json::from_str(&text)
        .map_err(|e| CliError::invalid(format!("{}: parse error: {e}", path.display())))?;
    match value {
        Value::Object(map) => Ok(map),
        _ => Err(schema_err(path, "top level must be an object")),
    }
}

fn get_number(path: &Path, obj: &Map<String, Value>, name: &str) -> Result<f64, CliError> {
    obj.get(name)
        .and_then(Value::as_f64)
        .ok_or_else(|| schema_err(path, &format!("field \"{name}\" must be a number")))
}

fn get_index(path: &Path, obj: &Map<String, Value>, name: &str) -> Result<usize, CliError> {
    let raw = obj.get(name).and_then(Value::as_u64).ok_or_else(|| {
        schema_err(
            path,
            &format!("field \"{name}\" must be a nonnegative integer"),
        )
    })?;
    usize::try_from(raw).map_err(|_| schema_err(path, &format!("field \"{name}\" is too large")))
}

fn get_array(
    path: &Path,
    obj: &Map<String, Value>,
    name: &str,
    expected: usize,
    expected_desc: &str,
) -> Result<Vec<f64>, CliError> {
    let raw = obj.get(name).and_then(Value::as_array).ok_or_else(|| {
        schema_err(
            path,
            &format!("field \"{name}\" must be an array of numbers"),
        )
    })?;
    if raw.len() != expected {
        return Err(schema_err(
            path,
            &format!(
                "field \"{name}\" must have {expected_desc} = {expected} entries, got {}",
                raw.len()
            ),
        ));
    }
    raw.iter()
        .enumerate()
        .map(|(i, v)| {
            v.as_f64()
                .ok_or_else(|| schema_err(path, &format!("field \"{name}\"[{i}] must be a number")))
        })
        .collect()
}

/// Reads one instance file, deciding the variant from the key set and
/// reporting the first missing or unexpected field by name.
pub(crate) fn load_instance(path: &Path) -> Result<InstanceFile, CliError> {
    let obj = read_object(path)?;
    let keys: BTreeSet<&str> = obj.keys().map(|k| k.as_str()).collect();
    const GENERAL: [&str; 4] = ["n", "a", "b", "c"];
    const TOEPLITZ: [&str; 4] = ["alpha", "beta", "gamma", "size"];
    const SYMMETRIC: [&str; 3] = ["alpha", "beta", "size"];
    let expected: &[&str] = if GENERAL.iter().any(|k| keys.contains(k)) {
        &GENERAL
    } else if TOEPLITZ.iter().any(|k| keys.contains(k)) {
        if keys.contains("gamma") {
            &TOEPLITZ
        } else {
            &SYMMETRIC
        }
    } else {
        return Err(schema_err(
            path,
            "expected a {n, a, b, c} or {alpha, beta[, gamma], size} instance",
        ));
    };
    for key in expected {
        if !keys.contains(key) {
            return Err(schema_err(path, &format!("missing field \"{key}\"")));
        }
    }
    for key in &keys {
        if !expected.contains(key) {
            return Err(schema_err(path, &format!("unexpected field \"{key}\"")));
        }
    }
    if expected == GENERAL {
        let n = get_index(path, &obj, "n")?;
        let a = get_array(path, &obj, "a", n + 1, "n+1")?;
        let b = get_array(path, &obj, "b", n + 2, "n+2")?;
        let c = get_array(path, &obj, "c", n + 1, "n+1")?;
        return Ok(InstanceFile::General { n, a, b, c });
    }
    let size = get_index(path, &obj, "size")?;
    if size < 2 {
        return Err(schema_err(path, "field \"size\" must be at least 2"));
    }
    let alpha = get_number(path, &obj, "alpha")?;
    let beta = get_number(path, &obj, "beta")?;
    if expected == TOEPLITZ {
        let gamma = get_number(path, &obj, "gamma")?;
        Ok(InstanceFile::Toeplitz {
            alpha,
            beta,
            gamma,
            size,
        })
    } else {
        Ok(InstanceFile::Symmetric { alpha, beta, size })
    }
}

/// Reads a right-hand side: a plain JSON array with exactly `order` numbers.
pub(crate) fn load_rhs(path: &Path, order: usize) -> Result<Vec<f64>, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::invalid(format!("cannot read {}: {e}", path.display())))?;
    let value: Value = serde_json::from_str(&text)
        .map_err(|e| CliError::invalid(format!("{}: parse error: {e}", path.display())))?;
    let raw = value
        .as_array()
        .ok_or_else(|| schema_err(path, "right-hand side must be a JSON array of numbers"))?;
    if raw.len() != order {
        return Err(schema_err(
            path,
            &format!(
                "right-hand side must have n+2 = {order} entries, got {}",
                raw.len()
            ),
        ));
    }
    raw.iter()
        .enumerate()
        .map(|(i, v)| {
            v.as_f64()
                .ok_or_else(|| schema_err(path, &format!("entry [{i}] must be a number")))
        })
        .collect()
}

/// Comma-separated float list from a flag value; empty text is an empty
/// list so unread trailing sequences need not be invented.
pub(crate) fn parse_number_list(flag: &str, text: &str) -> Result<Vec<f64>, CliError> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|piece| {
            piece.trim().parse::<f64>().map_err(|_| {
                CliError::invalid(format!("{flag}: \"{}\" is not a number", piece.trim()))
            })
        })
        .collect()
}

/// Comma-separated matrix orders, each at least 2.
pub(crate) fn parse_size_list(flag: &str, text: &str) -> Result<Vec<usize>, CliError> {
    if text.trim().is_empty() {
        return Err(CliError::invalid(format!(
            "{flag}: expected at least one size"
        )));
    }
    text.split(',')
        .map(|piece| {
            let size = piece.trim().parse::<usize>().map_err(|_| {
                CliError::invalid(format!("{flag}: \"{}\" is not a size", piece.trim()))
            })?;
            if size < 2 {
                return Err(CliError::invalid(format!(
                    "{flag}: every size must be at least 2"
                )));
            }
            Ok(size)
        })
        .collect()
}
