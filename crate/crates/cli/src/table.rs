//! Tabular output rendered as JSON or CSV.
//!
//! JSON floats are rounded to 17 significant digits and CSV floats to 12,
//! then printed in shortest round-trip form, so output bytes depend only on
//! the values.

use std::io::Write;

use anyhow::Result;
use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Null,
    Bool(bool),
    Int(i64),
    Float(f64),
    Text(String),
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<u64> for Cell {
    fn from(v: u64) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

impl<T: Into<Cell>> From<Option<T>> for Cell {
    fn from(v: Option<T>) -> Self {
        v.map_or(Cell::Null, Into::into)
    }
}

/// Rounds to `digits` significant digits.
pub fn round_sig(x: f64, digits: usize) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{:.*e}", digits - 1, x).parse().expect("formatted float parses")
}

/// Positional notation for magnitudes in `[1e-4, 1e15)`, exponent otherwise.
fn plain_or_exp(x: f64) -> String {
    let a = x.abs();
    if a == 0.0 || (1e-4..1e15).contains(&a) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub name: &'static str,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(name: &'static str, columns: &[&'static str]) -> Self {
        Self {
            name,
            columns: columns.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len(), "table {}", self.name);
        self.rows.push(row);
    }
}

fn json_cell(c: &Cell) -> Value {
    match c {
        Cell::Null => Value::Null,
        Cell::Bool(b) => Value::Bool(*b),
        Cell::Int(i) => Value::from(*i),
        Cell::Float(f) => serde_json::Number::from_f64(round_sig(*f, 17)).map_or(Value::Null, Value::Number),
        Cell::Text(s) => Value::String(s.clone()),
    }
}

fn csv_cell(c: &Cell) -> String {
    match c {
        Cell::Null => String::new(),
        Cell::Bool(b) => b.to_string(),
        Cell::Int(i) => i.to_string(),
        Cell::Float(f) if f.is_finite() => plain_or_exp(round_sig(*f, 12)),
        Cell::Float(f) => f.to_string(),
        Cell::Text(s) => s.clone(),
    }
}

/// JSON object mapping each table name to an array of row objects.
pub fn to_json(tables: &[Table]) -> Value {
    let mut doc = Map::new();
    for t in tables {
        let rows = t
            .rows
            .iter()
            .map(|r| {
                let obj: Map<String, Value> = t
                    .columns
                    .iter()
                    .zip(r)
                    .map(|(c, v)| (c.to_string(), json_cell(v)))
                    .collect();
                Value::Object(obj)
            })
            .collect();
        doc.insert(t.name.to_string(), Value::Array(rows));
    }
    Value::Object(doc)
}

/// Each table as a `# name` line, a header and its rows, separated by blank
/// lines.
pub fn write_csv<W: Write>(tables: &[Table], out: &mut W) -> Result<()> {
    for (i, t) in tables.iter().enumerate() {
        if i > 0 {
            writeln!(out)?;
        }
        writeln!(out, "# {}", t.name)?;
        let mut w = csv::Writer::from_writer(&mut *out);
        w.write_record(&t.columns)?;
        for r in &t.rows {
            w.write_record(r.iter().map(csv_cell))?;
        }
        w.flush()?;
    }
    Ok(())
}

pub fn render(tables: &[Table], format: Format) -> Result<Vec<u8>> {
    let mut buf = Vec::new();
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut buf, &to_json(tables))?;
            buf.push(b'\n');
        }
        Format::Csv => write_csv(tables, &mut buf)?,
    }
    Ok(buf)
}
