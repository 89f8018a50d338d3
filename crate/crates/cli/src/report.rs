use std::path::Path;

use clap::ValueEnum;
use kwise_core::{Error, SCHEMA_VERSION};
use num_bigint::BigUint;
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// One command's result in all three renderings.
pub struct Report {
    pub json: Value,
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
    pub text: String,
    /// Drives the exit status: 0 when true, 1 otherwise.
    pub passed: bool,
}

impl Report {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s =
                    serde_json::to_string_pretty(&self.json).expect("json values serialize");
                s.push('\n');
                s
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&self.header).expect("in-memory write");
                for row in &self.rows {
                    w.write_record(row).expect("in-memory write");
                }
                String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields")
            }
            Format::Text => self.text.clone(),
        }
    }
}

/// Adds `schema_version` to a JSON object.
pub fn versioned(mut v: Value) -> Value {
    v["schema_version"] = json!(SCHEMA_VERSION);
    v
}

/// Exact integers that fit in 64 bits as numbers, larger ones as strings.
pub fn big_json(v: &BigUint) -> Value {
    match u64::try_from(v) {
        Ok(x) => json!(x),
        Err(_) => json!(v.to_string()),
    }
}

pub fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parameter(_) => 2,
        Error::Capacity(_) => 3,
        Error::Integrity(_) => 4,
    }
}

pub fn diagnostic(e: &Error) -> String {
    versioned(json!({
        "error": { "kind": e.kind(), "message": e.to_string() },
        "exit_code": exit_code(e),
    }))
    .to_string()
}

pub fn write_output(path: Option<&Path>, body: &str) -> Result<(), Error> {
    match path {
        Some(p) => std::fs::write(p, body)
            .map_err(|e| Error::Parameter(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

pub fn set_string(s: kwise_core::VertexSet) -> String {
    s.to_string()
}

pub fn set_list(s: kwise_core::VertexSet) -> Vec<u32> {
    s.vertices().collect()
}
