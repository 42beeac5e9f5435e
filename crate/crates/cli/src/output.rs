use clap::ValueEnum;
use serde::Serialize;
use serde_json::{json, Value};

use crate::args::Command;
use crate::commands::{self, Outcome};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Serialize)]
pub struct ErrorInfo {
    pub kind: &'static str,
    pub message: String,
}

/// One report per invocation. Maps are `BTreeMap`-backed, so key order is
/// fixed and the output is byte-stable apart from `runtime_ms`.
#[derive(Debug, Serialize)]
pub struct Envelope {
    pub command: &'static str,
    pub inputs: Value,
    pub result: Value,
    pub error_bounds: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorInfo>,
    pub runtime_ms: u64,
    pub tool_version: &'static str,
    #[serde(skip)]
    pub table: Option<Table>,
}

#[derive(Debug, Default)]
pub struct Table {
    pub headers: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Envelope {
    pub fn new(command: &Command, outcome: lplab::Result<Outcome>, runtime_ms: u64) -> Self {
        let mut env = Envelope {
            command: command.name(),
            inputs: commands::inputs(command),
            result: Value::Null,
            error_bounds: Value::Null,
            error: None,
            runtime_ms,
            tool_version: lplab::VERSION,
            table: None,
        };
        match outcome {
            Ok(o) => {
                env.result = o.result;
                env.error_bounds = o.error_bounds;
                env.table = o.table;
            }
            Err(e) => {
                env.error = Some(ErrorInfo {
                    kind: e.kind(),
                    message: e.to_string(),
                })
            }
        }
        env
    }
}

pub fn render(env: &Envelope, format: Format) -> Result<String, String> {
    // Errors are always reported as JSON.
    let format = if env.error.is_some() { Format::Json } else { format };
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(env).map_err(|e| e.to_string())?;
            s.push('\n');
            Ok(s)
        }
        Format::Csv => {
            let table = env.table.as_ref().ok_or("this command has no tabular output")?;
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(&table.headers).map_err(|e| e.to_string())?;
            for row in &table.rows {
                w.write_record(row).map_err(|e| e.to_string())?;
            }
            String::from_utf8(w.into_inner().map_err(|e| e.to_string())?).map_err(|e| e.to_string())
        }
        Format::Text => Ok(text(env)),
    }
}

fn text(env: &Envelope) -> String {
    let mut out = format!("{} (lplab {})\n", env.command, env.tool_version);
    let section = |out: &mut String, title: &str, v: &Value| {
        if let Value::Object(m) = v {
            out.push_str(title);
            out.push_str(":\n");
            for (k, v) in m {
                if k != "rows" && k != "points" {
                    out.push_str(&format!("  {k}: {}\n", scalar(v)));
                }
            }
        }
    };
    section(&mut out, "inputs", &env.inputs);
    section(&mut out, "result", &env.result);
    section(&mut out, "error_bounds", &env.error_bounds);
    if let Some(t) = &env.table {
        let widths: Vec<usize> = (0..t.headers.len())
            .map(|i| {
                t.rows
                    .iter()
                    .map(|r| r[i].len())
                    .chain([t.headers[i].len()])
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let line = |cells: Vec<&str>| {
            let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect();
            padded.join("  ").trim_end().to_string() + "\n"
        };
        out.push_str(&line(t.headers.clone()));
        for r in &t.rows {
            out.push_str(&line(r.iter().map(String::as_str).collect()));
        }
    }
    out
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Lossless decimal form of a float for CSV cells.
pub fn num(x: f64) -> String {
    if x.is_finite() {
        format!("{x:?}")
    } else {
        String::new()
    }
}

pub fn opt(x: Option<f64>) -> String {
    x.map(num).unwrap_or_default()
}

pub fn value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).unwrap_or(Value::Null)
}

pub fn bounds(pairs: &[(&str, f64)]) -> Value {
    let mut m = serde_json::Map::new();
    for (k, v) in pairs {
        m.insert((*k).to_string(), json!(v));
    }
    Value::Object(m)
}
