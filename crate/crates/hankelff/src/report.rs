//! The report envelope shared by every command, and its JSON and CSV
//! encodings.

use serde_json::{json, Map, Value};

pub const REPORT_SCHEMA: &str = "hankelff/v1";

pub type Row = Map<String, Value>;

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Report {
    pub command: String,
    pub params: Row,
    pub rows: Vec<Row>,
    /// Probes outside the asserted theorems; never affect the exit status.
    pub informational: Vec<Value>,
    pub failures: Vec<String>,
}

/// Builds a row from `json!({...})`, keeping key order.
pub fn row(v: Value) -> Row {
    match v {
        Value::Object(m) => m,
        _ => panic!("rows are JSON objects"),
    }
}

impl Report {
    pub fn new(command: &str, params: Row) -> Report {
        Report { command: command.to_string(), params, ..Report::default() }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_value(&self) -> Value {
        json!({
            "schema": REPORT_SCHEMA,
            "command": self.command,
            "params": self.params,
            "rows": self.rows,
            "informational": self.informational,
            "failures": self.failures,
        })
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_value()).expect("reports serialize");
        s.push('\n');
        s
    }

    /// The rows as CSV. Columns are the union of row keys in first-seen
    /// order; strings are written verbatim, so rationals keep their
    /// `num/den` form. Informational entries and failures are not part of
    /// the table.
    pub fn to_csv(&self) -> String {
        let mut columns: Vec<&str> = Vec::new();
        for r in &self.rows {
            for k in r.keys() {
                if !columns.contains(&k.as_str()) {
                    columns.push(k);
                }
            }
        }
        let mut w = csv::Writer::from_writer(Vec::new());
        if !columns.is_empty() {
            w.write_record(&columns).expect("in-memory writer");
        }
        for r in &self.rows {
            let cells: Vec<String> = columns.iter().map(|c| cell(r.get(*c))).collect();
            w.write_record(&cells).expect("in-memory writer");
        }
        String::from_utf8(w.into_inner().expect("flush to memory")).expect("csv is utf-8")
    }
}

fn cell(v: Option<&Value>) -> String {
    match v {
        None | Some(Value::Null) => String::new(),
        Some(Value::String(s)) => s.clone(),
        Some(other) => other.to_string(),
    }
}
