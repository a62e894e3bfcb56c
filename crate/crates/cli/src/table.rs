//! Tabular output. Numbers are written in the shortest form that parses back
//! to the same `f64`, so re-reading an emitted file and writing it again
//! reproduces it byte for byte.

use serde_json::{json, Value};

use crate::error::{usage, CliError};

#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Num(f64),
    Text(String),
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

impl From<usize> for Cell {
    fn from(x: usize) -> Self {
        Cell::Num(x as f64)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}

pub fn format_number(x: f64) -> String {
    let a = x.abs();
    if x == 0.0 || !x.is_finite() || (1e-5..1e16).contains(&a) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

impl Cell {
    fn csv_text(&self) -> String {
        match self {
            Cell::Num(x) => format_number(*x),
            Cell::Text(s) => s.clone(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Num(x) => serde_json::Number::from_f64(*x)
                .map(Value::Number)
                .unwrap_or_else(|| Value::String(format_number(*x))),
            Cell::Text(s) => Value::String(s.clone()),
        }
    }

    fn parse_csv(s: &str) -> Cell {
        match s.parse::<f64>() {
            Ok(x) if format_number(x) == s => Cell::Num(x),
            _ => Cell::Text(s.to_string()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new<S: Into<String>>(columns: impl IntoIterator<Item = S>) -> Self {
        Table {
            columns: columns.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
        }
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.columns).expect("in-memory write");
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::csv_text)).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 input")
    }

    pub fn to_json(&self) -> String {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| Value::Array(r.iter().map(Cell::json).collect()))
            .collect();
        let mut s = serde_json::to_string_pretty(&json!({ "columns": self.columns, "rows": rows }))
            .expect("serializable");
        s.push('\n');
        s
    }

    pub fn from_csv(s: &str) -> Result<Table, CliError> {
        let mut r = csv::Reader::from_reader(s.as_bytes());
        let columns: Vec<String> = r
            .headers()
            .map_err(|e| CliError::Usage(e.to_string()))?
            .iter()
            .map(str::to_string)
            .collect();
        let mut rows = Vec::new();
        for rec in r.records() {
            let rec = rec.map_err(|e| CliError::Usage(e.to_string()))?;
            rows.push(rec.iter().map(Cell::parse_csv).collect());
        }
        Ok(Table { columns, rows })
    }

    pub fn from_json(s: &str) -> Result<Table, CliError> {
        let v: Value = serde_json::from_str(s).map_err(|e| CliError::Usage(e.to_string()))?;
        let Some(cols) = v.get("columns").and_then(Value::as_array) else {
            return usage("missing \"columns\"");
        };
        let Some(raw_rows) = v.get("rows").and_then(Value::as_array) else {
            return usage("missing \"rows\"");
        };
        let columns = cols
            .iter()
            .map(|c| c.as_str().map(str::to_string))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| CliError::Usage("column names must be strings".into()))?;
        let mut rows = Vec::new();
        for r in raw_rows {
            let Some(cells) = r.as_array() else {
                return usage("rows must be arrays");
            };
            let row = cells
                .iter()
                .map(|c| match c {
                    Value::Number(n) => n.as_f64().map(Cell::Num),
                    Value::String(s) => Some(Cell::Text(s.clone())),
                    _ => None,
                })
                .collect::<Option<Vec<_>>>()
                .ok_or_else(|| CliError::Usage("cells must be numbers or strings".into()))?;
            rows.push(row);
        }
        Ok(Table { columns, rows })
    }
}
