//! Output rendering shared by the subcommands: plain text, CSV with a header
//! row, and machine-readable JSON. Numbers travel as decimal strings in JSON
//! so arbitrary precision survives any consumer.

use serde_json::{Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum OutFormat {
    Text,
    Json,
    Csv,
}

/// A single value with a column name for the CSV/JSON forms.
pub fn print_scalar(format: OutFormat, name: &str, value: &str) {
    match format {
        OutFormat::Text => println!("{value}"),
        OutFormat::Csv => {
            println!("{name}");
            println!("{value}");
        }
        OutFormat::Json => {
            let mut obj = Map::new();
            obj.insert(name.to_string(), Value::String(value.to_string()));
            println!("{}", Value::Object(obj));
        }
    }
}

/// A table; `json` carries the schema-specific object emitted in JSON mode.
pub fn print_table(format: OutFormat, headers: &[&str], rows: &[Vec<String>], json: Value) {
    match format {
        OutFormat::Text => {
            println!("{}", headers.join("\t"));
            for row in rows {
                println!("{}", row.join("\t"));
            }
        }
        OutFormat::Csv => {
            println!("{}", headers.join(","));
            for row in rows {
                println!("{}", row.join(","));
            }
        }
        OutFormat::Json => println!("{json}"),
    }
}

