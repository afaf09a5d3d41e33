//! Number formatting and the CSV/JSON/text writers.

use std::fmt::Write as _;
use std::io::Write;
use std::path::Path;

use clap::ValueEnum;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Text,
}

/// Failures surfaced to the user.
#[derive(Debug)]
pub enum CliError {
    /// Bad combination of arguments; exit code 2.
    Usage(String),
    /// Inputs outside a model's domain, or I/O; exit code 1.
    Domain(String),
}

impl CliError {
    pub fn exit_code(&self) -> std::process::ExitCode {
        match self {
            CliError::Usage(_) => std::process::ExitCode::from(2),
            CliError::Domain(_) => std::process::ExitCode::from(1),
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Domain(m) => f.write_str(m),
        }
    }
}

impl From<fuzzysphere::Error> for CliError {
    fn from(e: fuzzysphere::Error) -> Self {
        CliError::Domain(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Domain(format!("i/o: {e}"))
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Domain(format!("csv: {e}"))
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Domain(format!("json: {e}"))
    }
}

/// Shortest round-trip form; exponent notation outside `[1e-4, 1e15)`.
pub fn num(x: f64) -> String {
    let a = x.abs();
    if x == 0.0 || !x.is_finite() || (1e-4..1e15).contains(&a) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

/// Ordered key/value metadata echoed into every output.
#[derive(Debug, Default, Serialize)]
pub struct Metadata(pub Vec<(String, String)>);

impl Metadata {
    pub fn push(&mut self, key: &str, value: impl ToString) {
        self.0.push((key.to_string(), value.to_string()));
    }

    fn as_map(&self) -> serde_json::Map<String, serde_json::Value> {
        self.0.iter().map(|(k, v)| (k.clone(), serde_json::Value::String(v.clone()))).collect()
    }
}

/// A numeric table with metadata.
pub struct Table {
    pub metadata: Metadata,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<f64>>,
}

#[derive(Serialize)]
struct JsonTable<'a> {
    metadata: serde_json::Map<String, serde_json::Value>,
    columns: &'a [&'static str],
    rows: &'a [Vec<f64>],
}

fn sink(out: Option<&Path>) -> Result<Box<dyn Write>, CliError> {
    Ok(match out {
        Some(p) => Box::new(std::io::BufWriter::new(std::fs::File::create(p)?)),
        None => Box::new(std::io::stdout().lock()),
    })
}

pub fn write_table(table: &Table, format: Format, out: Option<&Path>) -> Result<(), CliError> {
    let mut w = sink(out)?;
    match format {
        Format::Json => {
            let j = JsonTable { metadata: table.metadata.as_map(), columns: &table.columns, rows: &table.rows };
            serde_json::to_writer_pretty(&mut w, &j)?;
            writeln!(w)?;
        }
        Format::Csv | Format::Text => {
            for (k, v) in &table.metadata.0 {
                writeln!(w, "# {k} = {v}")?;
            }
            let mut c = csv::Writer::from_writer(&mut w);
            c.write_record(&table.columns)?;
            for row in &table.rows {
                c.write_record(row.iter().map(|&x| num(x)))?;
            }
            c.flush()?;
        }
    }
    w.flush()?;
    Ok(())
}

/// Writes a flat report as `key: value` lines or a JSON object.
pub fn write_report(report: &serde_json::Value, format: Format, out: Option<&Path>) -> Result<(), CliError> {
    let mut w = sink(out)?;
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut w, report)?;
            writeln!(w)?;
        }
        Format::Text | Format::Csv => {
            let mut s = String::new();
            if let serde_json::Value::Object(map) = report {
                for (k, v) in map {
                    let _ = writeln!(s, "{k}: {}", text_value(v));
                }
            }
            w.write_all(s.as_bytes())?;
        }
    }
    w.flush()?;
    Ok(())
}

fn text_value(v: &serde_json::Value) -> String {
    match v {
        serde_json::Value::Number(n) => n.as_f64().map(num).unwrap_or_else(|| n.to_string()),
        serde_json::Value::String(s) => s.clone(),
        serde_json::Value::Array(a) => a.iter().map(text_value).collect::<Vec<_>>().join(", "),
        other => other.to_string(),
    }
}
