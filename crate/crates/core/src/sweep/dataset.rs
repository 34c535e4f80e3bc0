//! Tabular results and their CSV/JSON encodings.
//!
//! CSV blocks are `# key=value` metadata lines, one header row, then data
//! rows; numbers carry 17 significant digits and lines end in LF. Several
//! blocks (one per figure curve) are separated by a blank line.

use std::fmt::Write as _;

use serde_json::{json, Map, Value};

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Text(String),
    Empty,
}

impl Cell {
    pub fn as_f64(&self) -> Option<f64> {
        match self {
            Cell::Num(x) => Some(*x),
            _ => None,
        }
    }

    fn to_csv(&self) -> String {
        match self {
            Cell::Num(x) => format_number(*x),
            Cell::Text(s) => s.clone(),
            Cell::Empty => String::new(),
        }
    }

    fn to_json(&self) -> Value {
        match self {
            Cell::Num(x) if x.is_finite() => json!(x),
            Cell::Num(_) | Cell::Empty => Value::Null,
            Cell::Text(s) => Value::String(s.clone()),
        }
    }
}

/// Fixed 17-significant-digit scientific notation.
pub fn format_number(x: f64) -> String {
    format!("{x:.16e}")
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Dataset {
    pub metadata: Vec<(String, String)>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Dataset {
    pub fn new(columns: &[&str]) -> Self {
        Self { metadata: Vec::new(), columns: columns.iter().map(|c| c.to_string()).collect(), rows: Vec::new() }
    }

    pub fn column_index(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    /// Numeric values of a column (non-numeric cells are skipped).
    pub fn column(&self, name: &str) -> Vec<f64> {
        let Some(i) = self.column_index(name) else {
            return Vec::new();
        };
        self.rows.iter().filter_map(|r| r[i].as_f64()).collect()
    }

    pub fn meta(&self, key: &str) -> Option<&str> {
        self.metadata.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn write_csv(&self, out: &mut String) {
        for (k, v) in &self.metadata {
            let _ = writeln!(out, "# {k}={v}");
        }
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Cell::to_csv).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
    }

    pub fn to_json(&self) -> Value {
        let metadata: Map<String, Value> =
            self.metadata.iter().map(|(k, v)| (k.clone(), Value::String(v.clone()))).collect();
        let rows: Vec<Value> = self.rows.iter().map(|r| Value::Array(r.iter().map(Cell::to_json).collect())).collect();
        json!({ "metadata": metadata, "columns": self.columns, "rows": rows })
    }
}

pub fn to_csv(datasets: &[Dataset]) -> String {
    let mut out = String::new();
    for (i, d) in datasets.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        d.write_csv(&mut out);
    }
    out
}

/// One dataset encodes as an object; several as `{"datasets": [...]}`.
pub fn to_json(datasets: &[Dataset], figure: Option<&str>) -> String {
    let value = match (datasets, figure) {
        ([single], None) => single.to_json(),
        _ => {
            let mut m = Map::new();
            if let Some(id) = figure {
                m.insert("figure".into(), Value::String(id.into()));
            }
            m.insert("datasets".into(), Value::Array(datasets.iter().map(Dataset::to_json).collect()));
            Value::Object(m)
        }
    };
    let mut s = serde_json::to_string_pretty(&value).expect("json values always serialize");
    s.push('\n');
    s
}
