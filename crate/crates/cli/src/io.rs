//! JSON file schemas and rendering helpers.

use std::fs;
use std::path::Path;

use qplane::{Mat, ScalarExpr};
use serde_json::{json, Value};

use crate::CliError;

fn read_json(path: &Path) -> Result<Value, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn parse_matrix(v: &Value, key: &str, n: usize, origin: &str) -> Result<Mat<ScalarExpr>, CliError> {
    let bad = |msg: String| CliError::Input(format!("{origin}: {msg}"));
    let rows = v
        .get(key)
        .and_then(Value::as_array)
        .ok_or_else(|| bad(format!("expected an object with a \"{key}\" array")))?;
    if rows.len() != n {
        return Err(bad(format!("\"{key}\" needs {n} rows, found {}", rows.len())));
    }
    let mut out = Vec::with_capacity(n);
    for (i, row) in rows.iter().enumerate() {
        let row = row
            .as_array()
            .filter(|r| r.len() == n)
            .ok_or_else(|| bad(format!("row {i} must hold {n} entries")))?;
        let mut parsed = Vec::with_capacity(n);
        for (j, cell) in row.iter().enumerate() {
            let text = cell
                .as_str()
                .ok_or_else(|| bad(format!("entry ({i},{j}) must be a string")))?;
            let e = ScalarExpr::parse(text).map_err(|e| bad(format!("entry ({i},{j}) `{text}`: {e}")))?;
            parsed.push(e);
        }
        out.push(parsed);
    }
    Ok(Mat::from_rows(out))
}

pub fn read_flip(path: &Path) -> Result<Mat<ScalarExpr>, CliError> {
    parse_matrix(&read_json(path)?, "flip", 4, &path.display().to_string())
}

pub fn read_metric(path: &Path) -> Result<Mat<ScalarExpr>, CliError> {
    parse_matrix(&read_json(path)?, "metric", 2, &path.display().to_string())
}

pub fn matrix_json(m: &Mat<ScalarExpr>) -> Value {
    Value::Array(
        m.to_rows()
            .iter()
            .map(|r| Value::Array(r.iter().map(|x| Value::String(x.to_string())).collect()))
            .collect(),
    )
}

pub fn vector_json(v: &[ScalarExpr]) -> Value {
    Value::Array(v.iter().map(|x| Value::String(x.to_string())).collect())
}

pub fn grid_json<T: ToString>(g: &[[T; 2]; 2]) -> Value {
    json!([
        [g[0][0].to_string(), g[0][1].to_string()],
        [g[1][0].to_string(), g[1][1].to_string()]
    ])
}
