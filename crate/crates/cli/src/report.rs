use std::fs;
use std::io::Write;
use std::path::Path;

use seqtrans::Scalar;
use serde::Serialize;
use serde_json::Value;

use crate::error::{CliError, CliResult};

/// JSON form of a scalar: exact values as `p/q` strings, floats as numbers
/// (`null` when not finite).
pub fn num<S: Scalar>(v: &S) -> Value {
    if S::EXACT {
        Value::String(v.to_string())
    } else {
        serde_json::Number::from_f64(v.to_f64()).map_or(Value::Null, Value::Number)
    }
}

pub fn opt_num<S: Scalar>(v: Option<&S>) -> Value {
    v.map_or(Value::Null, num)
}

/// Float approximation, `None` when not finite.
pub fn approx<S: Scalar>(v: &S) -> Option<f64> {
    Some(v.to_f64()).filter(|x| x.is_finite())
}

pub fn to_json<T: Serialize>(report: &T) -> CliResult<String> {
    serde_json::to_string_pretty(report)
        .map(|mut s| {
            s.push('\n');
            s
        })
        .map_err(|e| CliError::Numerical(format!("cannot serialize report: {e}")))
}

/// CSV field, quoted when it contains a separator, quote or newline.
pub fn csv_field(text: &str) -> String {
    if text.contains([',', '"', '\n']) {
        format!("\"{}\"", text.replace('"', "\"\""))
    } else {
        text.to_string()
    }
}

pub fn csv_value(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => csv_field(s),
        other => csv_field(&other.to_string()),
    }
}

pub fn csv_lines(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut out = header.join(",");
    out.push('\n');
    for row in rows {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

pub fn emit(text: &str, output: Option<&Path>) -> CliResult<()> {
    match output {
        Some(path) => fs::write(path, text)
            .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display()))),
        None => std::io::stdout()
            .lock()
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Input(format!("cannot write to standard output: {e}"))),
    }
}
