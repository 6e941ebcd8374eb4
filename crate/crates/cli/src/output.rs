use serde_json::{json, Map, Value};
use xxpaths::Error;

use crate::args::Format;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFICATION_FAILED: i32 = 1;
pub const EXIT_BAD_INPUT: i32 = 2;
pub const EXIT_CAP_EXCEEDED: i32 = 3;

#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    /// Exact integer, kept as decimal text.
    Int(String),
    Float(f64),
    /// Float written in scientific notation, for residuals.
    Sci(f64),
    Text(String),
    Bool(bool),
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Int(s) | Cell::Text(s) => s.clone(),
            Cell::Float(v) => format!("{v:.12}"),
            Cell::Sci(v) => format!("{v:.6e}"),
            Cell::Bool(b) => b.to_string(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(s) | Cell::Text(s) => Value::String(s.clone()),
            Cell::Float(v) | Cell::Sci(v) => json!(v),
            Cell::Bool(b) => json!(b),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Table {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    fn to_json(&self) -> Value {
        Value::Array(
            self.rows
                .iter()
                .map(|row| {
                    let obj: Map<String, Value> = self.columns.iter().cloned().zip(row.iter().map(Cell::json)).collect();
                    Value::Object(obj)
                })
                .collect(),
        )
    }
}

/// A command result: the JSON document, an optional tabular form used for
/// CSV output, and whether every check in it passed.
#[derive(Clone, Debug, PartialEq)]
pub struct Doc {
    pub json: Value,
    pub table: Option<Table>,
    pub passed: bool,
}

impl Doc {
    pub fn value(json: Value) -> Self {
        Doc {
            json,
            table: None,
            passed: true,
        }
    }

    pub fn with_table(json: Value, table: Table) -> Self {
        Doc {
            json,
            table: Some(table),
            passed: true,
        }
    }

    pub fn table(table: Table) -> Self {
        Doc {
            json: table.to_json(),
            table: Some(table),
            passed: true,
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json).expect("JSON values always serialise");
                s.push('\n');
                s
            }
            Format::Csv => match &self.table {
                Some(t) => write_csv(&t.columns, t.rows.iter().map(|r| r.iter().map(Cell::csv).collect())),
                None => flatten_csv(&self.json),
            },
        }
    }
}

fn write_csv(columns: &[String], rows: impl Iterator<Item = Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(columns).expect("writing to memory");
    for row in rows {
        w.write_record(&row).expect("writing to memory");
    }
    String::from_utf8(w.into_inner().expect("writing to memory")).expect("CSV of UTF-8 fields")
}

/// One row whose columns are the keys of a JSON object; nested values are
/// written as compact JSON.
fn flatten_csv(value: &Value) -> String {
    let cell = |v: &Value| match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    };
    match value {
        Value::Object(map) => write_csv(
            &map.keys().cloned().collect::<Vec<_>>(),
            std::iter::once(map.values().map(cell).collect()),
        ),
        other => write_csv(&["value".to_string()], std::iter::once(vec![cell(other)])),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum CliError {
    Core(Error),
    Usage(String),
    Io(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) if e.is_cap() => EXIT_CAP_EXCEEDED,
            _ => EXIT_BAD_INPUT,
        }
    }

    pub fn to_json(&self) -> Value {
        let (kind, message) = match self {
            CliError::Core(e) => {
                let kind = match e {
                    Error::InvalidInput(_) => "invalid_input",
                    Error::CoincidentArguments { .. } => "coincident_arguments",
                    Error::CapExceeded { .. } => "cap_exceeded",
                    Error::NumericBreakdown { .. } => "numeric_breakdown",
                    Error::InexactDivision(_) => "inexact_division",
                };
                (kind, e.to_string())
            }
            CliError::Usage(m) => ("usage", m.clone()),
            CliError::Io(m) => ("io", m.clone()),
        };
        json!({"error": kind, "message": message, "exit_code": self.exit_code()})
    }
}
