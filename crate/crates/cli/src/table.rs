//! Tabular output. CSV files start with `#` lines (title, then notes), then a
//! header row; reals are written with 17 significant digits so that reading
//! a file back and writing it again reproduces it byte for byte.

use std::fmt;

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Real(f64),
    Text(String),
    Empty,
}

impl Cell {
    /// Inverse of `Display`: integers, then reals, then text.
    fn parse(s: &str) -> Self {
        if s.is_empty() {
            Cell::Empty
        } else if let Ok(i) = s.parse::<i64>() {
            Cell::Int(i)
        } else if let Ok(x) = s.parse::<f64>() {
            Cell::Real(x)
        } else {
            Cell::Text(s.to_owned())
        }
    }

    fn to_json(&self) -> Value {
        match self {
            Cell::Int(i) => json!(i),
            Cell::Real(x) => json!(x),
            Cell::Text(s) => json!(s),
            Cell::Empty => Value::Null,
        }
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cell::Int(i) => write!(f, "{i}"),
            Cell::Real(x) => write!(f, "{x:.16e}"),
            Cell::Text(s) => f.write_str(s),
            Cell::Empty => Ok(()),
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Real(x)
    }
}

impl From<usize> for Cell {
    fn from(i: usize) -> Self {
        Cell::Int(i as i64)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_owned())
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}

impl From<bool> for Cell {
    fn from(b: bool) -> Self {
        Cell::Text(if b { "true" } else { "false" }.to_owned())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub title: String,
    pub notes: Vec<String>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

#[derive(Serialize)]
struct JsonTable<'a> {
    schema: u32,
    command: &'a str,
    title: &'a str,
    notes: &'a [String],
    columns: &'a [String],
    rows: Vec<Vec<Value>>,
}

impl Table {
    pub fn new(title: impl Into<String>, columns: &[&str]) -> Self {
        Self {
            title: title.into(),
            notes: Vec::new(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn note(&mut self, note: impl Into<String>) -> &mut Self {
        self.notes.push(note.into());
        self
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> Result<String, CliError> {
        let mut out = String::new();
        for line in std::iter::once(&self.title).chain(&self.notes) {
            out.push_str("# ");
            out.push_str(line);
            out.push('\n');
        }
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
        let io = |e: csv::Error| CliError::Io(e.to_string());
        w.write_record(&self.columns).map_err(io)?;
        for row in &self.rows {
            w.write_record(row.iter().map(|c| c.to_string())).map_err(io)?;
        }
        let body = w.into_inner().map_err(|e| CliError::Io(e.to_string()))?;
        out.push_str(&String::from_utf8(body).map_err(|e| CliError::Io(e.to_string()))?);
        Ok(out)
    }

    pub fn to_json(&self, command: &str) -> Result<String, CliError> {
        let doc = JsonTable {
            schema: 1,
            command,
            title: &self.title,
            notes: &self.notes,
            columns: &self.columns,
            rows: self.rows.iter().map(|r| r.iter().map(Cell::to_json).collect()).collect(),
        };
        let mut s = serde_json::to_string_pretty(&doc).map_err(|e| CliError::Io(e.to_string()))?;
        s.push('\n');
        Ok(s)
    }

    pub fn from_csv(text: &str) -> Result<Self, CliError> {
        let mut comments = Vec::new();
        let mut rest = text;
        while let Some(line) = rest.strip_prefix('#') {
            let (head, tail) = line.split_once('\n').unwrap_or((line, ""));
            comments.push(head.strip_prefix(' ').unwrap_or(head).to_owned());
            rest = tail;
        }
        let mut comments = comments.into_iter();
        let title = comments.next().ok_or_else(|| CliError::Table("missing '#' title line".into()))?;
        let mut reader = csv::ReaderBuilder::new().has_headers(true).from_reader(rest.as_bytes());
        let bad = |e: csv::Error| CliError::Table(e.to_string());
        let columns: Vec<String> = reader.headers().map_err(bad)?.iter().map(str::to_owned).collect();
        let mut rows = Vec::new();
        for record in reader.records() {
            rows.push(record.map_err(bad)?.iter().map(Cell::parse).collect());
        }
        Ok(Self { title, notes: comments.collect(), columns, rows })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Table {
        let mut t = Table::new("h_co(R) scan", &["R", "label", "count", "h"]);
        t.note("sign: positive h is attraction");
        t.push(vec![0.1.into(), "a, quoted".into(), 3usize.into(), (1.0 / 3.0).into()]);
        t.push(vec![1e-300.into(), "b".into(), 0usize.into(), Cell::Empty]);
        t.push(vec![f64::INFINITY.into(), "".into(), 7usize.into(), (-2.5e17).into()]);
        t
    }

    #[test]
    fn csv_round_trip_is_byte_identical() {
        let first = sample().to_csv().unwrap();
        let again = Table::from_csv(&first).unwrap().to_csv().unwrap();
        assert_eq!(first, again);
    }

    #[test]
    fn reals_keep_every_bit() {
        let t = Table::from_csv(&sample().to_csv().unwrap()).unwrap();
        assert_eq!(t.rows[0][3], Cell::Real(1.0 / 3.0));
        assert_eq!(t.rows[0][1], Cell::Text("a, quoted".into()));
        assert_eq!(t.notes, vec!["sign: positive h is attraction".to_string()]);
    }

    #[test]
    fn header_only_table() {
        let t = Table::new("empty", &["R", "h"]);
        let csv = t.to_csv().unwrap();
        assert_eq!(csv, "# empty\nR,h\n");
        assert_eq!(Table::from_csv(&csv).unwrap().to_csv().unwrap(), csv);
    }

    #[test]
    fn json_carries_schema() {
        let v: Value = serde_json::from_str(&sample().to_json("crossover").unwrap()).unwrap();
        assert_eq!(v["schema"], 1);
        assert_eq!(v["rows"][0][2], 3);
        assert!(v["rows"][1][3].is_null());
    }

    #[test]
    fn missing_title_is_rejected() {
        assert!(Table::from_csv("R,h\n1,2\n").is_err());
    }
}
