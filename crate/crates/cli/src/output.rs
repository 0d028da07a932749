use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde::Serialize;
use serde_json::ser::Formatter;
use serde_json::{Map, Value};

/// Environment variable naming the directory that relative `--out` paths
/// are resolved against.
pub const OUT_DIR_VAR: &str = "FPU_OUT_DIR";

/// JSON formatter that prints every finite float with 17 significant
/// digits, enough to reproduce the `f64` bit pattern exactly.
struct SigFigFormatter;

impl Formatter for SigFigFormatter {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> std::io::Result<()>
    where
        W: ?Sized + Write,
    {
        write!(writer, "{value:.16e}")
    }

    fn write_f32<W>(&mut self, writer: &mut W, value: f32) -> std::io::Result<()>
    where
        W: ?Sized + Write,
    {
        write!(writer, "{value:.16e}")
    }
}

/// Formats a single float the same way the JSON emitter does, for CSV
/// cells and config comments.
pub fn float_cell(value: f64) -> String {
    if value.is_finite() {
        format!("{value:.16e}")
    } else {
        value.to_string()
    }
}

/// Serializes `value` as compact JSON with full-precision floats and a
/// trailing newline.
pub fn to_json_bytes<T: Serialize>(value: &T) -> Result<Vec<u8>> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, SigFigFormatter);
    value
        .serialize(&mut ser)
        .context("failed to serialize output as JSON")?;
    buf.push(b'\n');
    Ok(buf)
}

/// Converts any serializable value into a JSON tree so reports can be
/// assembled field by field.
pub fn to_value<T: Serialize>(value: &T) -> Result<Value> {
    serde_json::to_value(value).context("failed to convert output to a JSON value")
}

/// Assembles the standard report shape: a `config` object echoing the
/// effective parameters, followed by the result fields.
pub fn report(config: Value, fields: Vec<(&str, Value)>) -> Value {
    let mut map = Map::new();
    map.insert("config".to_owned(), config);
    for (key, value) in fields {
        map.insert(key.to_owned(), value);
    }
    Value::Object(map)
}

/// Builds a config object from key/value pairs.
pub fn config_object(entries: Vec<(&str, Value)>) -> Value {
    let mut map = Map::new();
    for (key, value) in entries {
        map.insert(key.to_owned(), value);
    }
    Value::Object(map)
}

/// Renders the config echo as CSV comment lines, one `# key = value`
/// line per entry in key order.
pub fn config_comment_lines(config: &Value) -> Result<String> {
    let mut out = String::new();
    if let Value::Object(map) = config {
        for (key, value) in map {
            let mut buf = Vec::new();
            let mut ser = serde_json::Serializer::with_formatter(&mut buf, SigFigFormatter);
            value
                .serialize(&mut ser)
                .context("failed to serialize a config entry")?;
            out.push_str("# ");
            out.push_str(key);
            out.push_str(" = ");
            out.push_str(&String::from_utf8_lossy(&buf));
            out.push('\n');
        }
    }
    Ok(out)
}

/// Resolves the effective output path: absolute paths pass through,
/// relative paths land under `FPU_OUT_DIR` when that variable is set.
pub fn resolve_out(out: Option<&Path>) -> Option<PathBuf> {
    let path = out?;
    if path.is_absolute() {
        return Some(path.to_path_buf());
    }
    match std::env::var_os(OUT_DIR_VAR) {
        Some(dir) if !dir.is_empty() => Some(PathBuf::from(dir).join(path)),
        _ => Some(path.to_path_buf()),
    }
}

/// Writes the rendered output to the resolved path, or to stdout when no
/// path was given.
pub fn write_output(out: Option<&Path>, bytes: &[u8]) -> Result<()> {
    match resolve_out(out) {
        Some(path) => {
            if let Some(parent) = path.parent() {
                if !parent.as_os_str().is_empty() {
                    std::fs::create_dir_all(parent).with_context(|| {
                        format!("failed to create output directory {}", parent.display())
                    })?;
                }
            }
            std::fs::write(&path, bytes)
                .with_context(|| format!("failed to write {}", path.display()))
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(bytes).context("failed to write to stdout")
        }
    }
}

/// Emits a JSON report to the chosen destination.
pub fn emit_json(out: Option<&Path>, value: &Value) -> Result<()> {
    write_output(out, &to_json_bytes(value)?)
}

/// Emits CSV text, prefixed by the config echo as comment lines.
pub fn emit_csv(out: Option<&Path>, config: &Value, header: &str, rows: &str) -> Result<()> {
    let mut text = config_comment_lines(config)?;
    text.push_str(header);
    text.push('\n');
    text.push_str(rows);
    write_output(out, text.as_bytes())
}
