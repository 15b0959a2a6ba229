//! CSV and JSON writers. Every file starts with the command line, the
//! precision and the tool version, and all arbitrary-precision values are
//! printed with `P` significant digits.

use std::io::Write;

use rug::Float;
use serde_json::{json, Map, Value};

use crate::Format;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// `P` significant digits in scientific notation, with a plain `0` for zero.
pub fn fmt_float(x: &Float, digits: u32) -> String {
    if x.is_zero() {
        "0".to_string()
    } else {
        x.to_string_radix(10, Some(digits as usize))
    }
}

/// Shortest round-trip representation of an `f64`.
pub fn fmt_f64(x: f64) -> String {
    if x == 0.0 {
        "0".to_string()
    } else {
        format!("{x:e}")
    }
}

/// Run parameters echoed in the header. `None` fields print as `-`.
#[derive(Clone, Debug, Default)]
pub struct Header {
    pub argv: Vec<String>,
    pub precision: u32,
    pub r: Option<u32>,
    pub beta: Option<String>,
    pub n: Option<usize>,
    pub k: Option<u32>,
    pub extra: Vec<(String, String)>,
}

impl Header {
    fn csv_lines(&self) -> Vec<String> {
        let opt = |v: Option<String>| v.unwrap_or_else(|| "-".to_string());
        let mut lines = vec![
            format!("# angelesco {VERSION}"),
            format!("# command: {}", self.argv.join(" ")),
            format!("# precision: {}", self.precision),
            format!("# r: {}", opt(self.r.map(|v| v.to_string()))),
            format!("# beta: {}", opt(self.beta.clone())),
            format!("# n: {}", opt(self.n.map(|v| v.to_string()))),
            format!("# k: {}", opt(self.k.map(|v| v.to_string()))),
        ];
        lines.extend(self.extra.iter().map(|(key, v)| format!("# {key}: {v}")));
        lines
    }

    fn json(&self) -> Map<String, Value> {
        let mut m = Map::new();
        m.insert("tool".into(), json!("angelesco"));
        m.insert("version".into(), json!(VERSION));
        m.insert("argv".into(), json!(self.argv));
        m.insert("precision".into(), json!(self.precision));
        m.insert("r".into(), json!(self.r));
        m.insert("beta".into(), json!(self.beta));
        m.insert("n".into(), json!(self.n));
        m.insert("k".into(), json!(self.k));
        for (key, v) in &self.extra {
            m.insert(key.clone(), json!(v));
        }
        m
    }
}

/// A header plus rows of preformatted cells.
pub struct Table {
    pub header: Header,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
    /// Cells of these columns are emitted as JSON integers rather than strings.
    pub integer_columns: Vec<&'static str>,
}

impl Table {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => {
                let mut out = self.header.csv_lines().join("\n");
                out.push('\n');
                out.push_str(&self.columns.join(","));
                out.push('\n');
                for row in &self.rows {
                    out.push_str(&row.join(","));
                    out.push('\n');
                }
                out
            }
            Format::Json => {
                let mut m = self.header.json();
                let rows: Vec<Value> = self
                    .rows
                    .iter()
                    .map(|row| {
                        let mut obj = Map::new();
                        for (col, cell) in self.columns.iter().zip(row) {
                            let v = if self.integer_columns.contains(col) {
                                cell.parse::<i64>().map(Value::from).unwrap_or_else(|_| json!(cell))
                            } else {
                                json!(cell)
                            };
                            obj.insert((*col).to_string(), v);
                        }
                        Value::Object(obj)
                    })
                    .collect();
                m.insert("rows".into(), Value::Array(rows));
                let mut s = serde_json::to_string_pretty(&Value::Object(m)).expect("serializable");
                s.push('\n');
                s
            }
        }
    }
}

/// Writes to the given path, or to stdout when there is none.
pub fn emit(text: &str, path: Option<&std::path::Path>) -> std::io::Result<()> {
    match path {
        Some(p) => std::fs::write(p, text),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()
        }
    }
}
