//! Rendering of command results as JSON, CSV or plain text.

use std::fmt::Write as _;

use clap::ValueEnum;
use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde_json::{Map, Value};

pub const SCHEMA: &str = "pfaffcount/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Human,
}

/// A JSON number when the value fits in 64 bits, otherwise a decimal string.
pub fn natural(x: &BigUint) -> Value {
    x.to_u64().map_or_else(|| Value::String(x.to_string()), Value::from)
}

/// Integers as numbers when they fit in 64 bits; everything else as an
/// `"a/b"` or decimal string.
pub fn rational(x: &BigRational) -> Value {
    if x.is_integer() {
        x.numer()
            .to_i64()
            .map_or_else(|| Value::String(x.numer().to_string()), Value::from)
    } else {
        Value::String(format!("{}/{}", x.numer(), x.denom()))
    }
}

type Table = (Vec<String>, Vec<Map<String, Value>>);

/// A command result: top-level fields plus an optional table of rows.
#[derive(Debug, Clone, Default)]
pub struct Report {
    fields: Map<String, Value>,
    rows: Option<Table>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        let mut r = Report::default();
        r.set("schema", SCHEMA);
        r.set("command", command);
        r
    }

    pub fn set(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.fields.insert(key.to_owned(), value.into());
        self
    }

    pub fn field(&self, key: &str) -> Option<&Value> {
        self.fields.get(key)
    }

    /// Attaches a table; `columns` fixes the CSV and text column order.
    pub fn table(&mut self, columns: &[&str], rows: Vec<Map<String, Value>>) {
        self.rows = Some((columns.iter().map(|c| (*c).to_owned()).collect(), rows));
    }

    pub fn to_json(&self) -> Value {
        let mut out = self.fields.clone();
        if let Some((_, rows)) = &self.rows {
            out.insert(
                "rows".into(),
                Value::Array(rows.iter().cloned().map(Value::Object).collect()),
            );
        }
        Value::Object(out)
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.to_json()).expect("serializable");
                s.push('\n');
                s
            }
            Format::Csv => self.csv(),
            Format::Human => self.human(),
        }
    }

    fn csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        match &self.rows {
            Some((columns, rows)) => {
                w.write_record(columns).expect("in-memory write");
                for row in rows {
                    w.write_record(columns.iter().map(|c| cell(row.get(c))))
                        .expect("in-memory write");
                }
            }
            None => {
                w.write_record(self.fields.keys()).expect("in-memory write");
                w.write_record(self.fields.values().map(|v| cell(Some(v))))
                    .expect("in-memory write");
            }
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
    }

    fn human(&self) -> String {
        let mut s = String::new();
        let width = self.fields.keys().map(String::len).max().unwrap_or(0);
        for (k, v) in &self.fields {
            if k == "schema" {
                continue;
            }
            let _ = writeln!(s, "{k:<width$}  {}", cell(Some(v)));
        }
        if let Some((columns, rows)) = &self.rows {
            let cells: Vec<Vec<String>> = rows
                .iter()
                .map(|r| columns.iter().map(|c| cell(r.get(c))).collect())
                .collect();
            let widths: Vec<usize> = columns
                .iter()
                .enumerate()
                .map(|(i, c)| cells.iter().map(|r| r[i].len()).chain([c.len()]).max().unwrap_or(0))
                .collect();
            let line = |items: &[String]| {
                items
                    .iter()
                    .zip(&widths)
                    .map(|(x, w)| format!("{x:<w$}"))
                    .collect::<Vec<_>>()
                    .join("  ")
                    .trim_end()
                    .to_owned()
            };
            s.push('\n');
            let _ = writeln!(s, "{}", line(columns));
            for r in &cells {
                let _ = writeln!(s, "{}", line(r));
            }
        }
        s
    }
}

fn cell(v: Option<&Value>) -> String {
    match v {
        None | Some(Value::Null) => String::new(),
        Some(Value::String(s)) => s.clone(),
        Some(v) => v.to_string(),
    }
}
