//! Output shaping: significant-digit rounding, finite-value enforcement,
//! and file-or-stdout writing.

use serde_json::Value;

use crate::CliError;

/// Round to `digits` significant digits (keeps zero and sign exactly).
pub fn round_sig(x: f64, digits: u32) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{:.*e}", digits as usize - 1, x)
        .parse()
        .unwrap_or(x)
}

/// Round every number in a JSON tree to `digits` significant digits and
/// reject non-finite values.
pub fn round_json(value: &mut Value, digits: u32) -> Result<(), CliError> {
    match value {
        Value::Number(n) => {
            if let Some(f) = n.as_f64() {
                if !f.is_finite() {
                    return Err(CliError::State("non-finite number in output".into()));
                }
                if n.is_f64() {
                    *value = serde_json::Number::from_f64(round_sig(f, digits))
                        .map(Value::Number)
                        .ok_or_else(|| CliError::State("non-finite number in output".into()))?;
                }
            }
            Ok(())
        }
        Value::Array(items) => items.iter_mut().try_for_each(|v| round_json(v, digits)),
        Value::Object(map) => map.values_mut().try_for_each(|v| round_json(v, digits)),
        _ => Ok(()),
    }
}

/// Serialize with 12 significant digits and a trailing newline.
pub fn to_json_string<T: serde::Serialize>(value: &T) -> Result<String, CliError> {
    let mut v = serde_json::to_value(value)
        .map_err(|e| CliError::State(format!("serialization failed: {e}")))?;
    round_json(&mut v, 12)?;
    let mut s = serde_json::to_string_pretty(&v)
        .map_err(|e| CliError::State(format!("serialization failed: {e}")))?;
    s.push('\n');
    Ok(s)
}

/// CSV cell at 9 significant digits.
pub fn csv_num(x: f64) -> String {
    if !x.is_finite() {
        return "nan".into();
    }
    format!("{}", round_sig(x, 9))
}

/// Write to `--out FILE` or stdout.
pub fn emit(out: Option<&str>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::State(format!("cannot write `{path}`: {e}"))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
