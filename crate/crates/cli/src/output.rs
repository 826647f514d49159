//! Flat records rendered as CSV, `key=value` lines or JSON lines.

use std::io::{self, Write};

use clap::ValueEnum;
use meanbound::format::num;
use serde_json::{Map, Number, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Records,
    JsonLines,
}

#[derive(Debug, Clone)]
pub enum Field {
    Num(f64),
    Int(u64),
    Bool(bool),
    Text(String),
    /// Nested structure; compact JSON in text formats.
    Json(Value),
}

impl Field {
    fn text(&self) -> String {
        match self {
            Field::Num(x) => num(*x),
            Field::Int(n) => n.to_string(),
            Field::Bool(b) => b.to_string(),
            Field::Text(s) => s.clone(),
            Field::Json(v) => v.to_string(),
        }
    }

    fn json(&self) -> Value {
        match self {
            // non-finite values have no JSON number form
            Field::Num(x) => {
                Number::from_f64(*x).map_or_else(|| Value::String(num(*x)), Value::Number)
            }
            Field::Int(n) => Value::from(*n),
            Field::Bool(b) => Value::Bool(*b),
            Field::Text(s) => Value::String(s.clone()),
            Field::Json(v) => v.clone(),
        }
    }
}

pub type Record = Vec<(&'static str, Field)>;

/// Writes `rows` to `out`; CSV takes its header from the first row.
pub fn write(out: &mut impl Write, format: Format, rows: &[Record]) -> io::Result<()> {
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            if let Some(first) = rows.first() {
                w.write_record(first.iter().map(|(k, _)| *k))?;
            }
            for row in rows {
                w.write_record(row.iter().map(|(_, v)| v.text()))?;
            }
            w.flush()
        }
        Format::Records => {
            for row in rows {
                let line: Vec<String> = row
                    .iter()
                    .map(|(k, v)| format!("{k}={}", v.text()))
                    .collect();
                writeln!(out, "{}", line.join(" "))?;
            }
            Ok(())
        }
        Format::JsonLines => {
            for row in rows {
                let obj: Map<String, Value> =
                    row.iter().map(|(k, v)| (k.to_string(), v.json())).collect();
                writeln!(out, "{}", Value::Object(obj))?;
            }
            Ok(())
        }
    }
}
