//! Report assembly and rendering. Floats are always written with 17
//! significant digits so reports diff cleanly.

use std::io::{self, Write};

use serde::Serialize;
use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Text(String),
    Bool(bool),
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl From<u64> for Cell {
    fn from(v: u64) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

impl Cell {
    fn to_json(&self) -> Value {
        match self {
            Cell::Int(i) => Value::from(*i),
            Cell::Float(x) => float(*x),
            Cell::Text(s) => Value::from(s.clone()),
            Cell::Bool(b) => Value::from(*b),
        }
    }

    fn to_text(&self) -> String {
        match self {
            Cell::Int(i) => i.to_string(),
            Cell::Float(x) => fmt_f64(*x),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
        }
    }
}

pub fn fmt_f64(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x.is_infinite() {
        if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        }
    } else {
        format!("{x:.16e}")
    }
}

/// JSON has no infinities; those become strings.
pub fn float(x: f64) -> Value {
    if x.is_finite() {
        Value::from(x)
    } else {
        Value::from(fmt_f64(x))
    }
}

#[derive(Debug, Clone, Default)]
pub struct Table {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(headers: &[&str]) -> Self {
        Table { headers: headers.iter().map(|h| h.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.headers.len());
        self.rows.push(row);
    }
}

/// A key-value summary, optionally with one table. JSON output nests the
/// table under `table_key`; CSV output is the table alone, or the scalar
/// summary as a single row when there is no table.
#[derive(Debug, Clone, Default)]
pub struct Report {
    pub summary: Map<String, Value>,
    /// The key is `None` for tables that only appear in CSV output.
    pub table: Option<(Option<String>, Table)>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.summary.insert(key.to_string(), value.into());
        self
    }

    pub fn set_f64(&mut self, key: &str, value: f64) -> &mut Self {
        self.summary.insert(key.to_string(), float(value));
        self
    }

    pub fn with_table(mut self, key: &str, table: Table) -> Self {
        self.table = Some((Some(key.to_string()), table));
        self
    }

    pub fn with_csv_table(mut self, table: Table) -> Self {
        self.table = Some((None, table));
        self
    }

    pub fn to_json(&self) -> Value {
        let mut map = self.summary.clone();
        if let Some((Some(key), table)) = &self.table {
            let rows = table
                .rows
                .iter()
                .map(|row| {
                    let obj: Map<String, Value> =
                        table.headers.iter().cloned().zip(row.iter().map(Cell::to_json)).collect();
                    Value::Object(obj)
                })
                .collect();
            map.insert(key.clone(), Value::Array(rows));
        }
        Value::Object(map)
    }

    pub fn render(&self, format: Format) -> io::Result<Vec<u8>> {
        match format {
            Format::Json => {
                let mut out = Vec::new();
                let mut ser = serde_json::Serializer::with_formatter(&mut out, Digits17);
                self.to_json().serialize(&mut ser).map_err(io::Error::other)?;
                out.push(b'\n');
                Ok(out)
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                match &self.table {
                    Some((_, table)) => {
                        w.write_record(&table.headers)?;
                        for row in &table.rows {
                            w.write_record(row.iter().map(Cell::to_text))?;
                        }
                    }
                    None => {
                        w.write_record(self.summary.keys())?;
                        w.write_record(self.summary.values().map(value_text))?;
                    }
                }
                w.into_inner().map_err(|e| io::Error::other(e.to_string()))
            }
        }
    }
}

fn value_text(v: &Value) -> String {
    match v {
        Value::Number(n) => match n.as_f64() {
            Some(x) if !n.is_i64() && !n.is_u64() => fmt_f64(x),
            _ => n.to_string(),
        },
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => {
            let mut out = Vec::new();
            let mut ser = serde_json::Serializer::with_formatter(&mut out, Digits17);
            let _ = other.serialize(&mut ser);
            String::from_utf8(out).unwrap_or_default()
        }
    }
}

struct Digits17;

impl serde_json::ser::Formatter for Digits17 {
    fn write_f64<W: ?Sized + Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        write!(writer, "{value:.16e}")
    }
}
