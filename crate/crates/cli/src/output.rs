//! Rendering a report as JSON, an aligned table or CSV.

use serde_json::{Map, Value};

use crate::args::Format;

/// Rows for the table and CSV forms.
#[derive(Clone, Debug, Default)]
pub struct Table {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new<S: Into<String>>(headers: impl IntoIterator<Item = S>) -> Self {
        Table { headers: headers.into_iter().map(Into::into).collect(), rows: Vec::new() }
    }

    pub fn push<S: Into<String>>(&mut self, row: impl IntoIterator<Item = S>) {
        self.rows.push(row.into_iter().map(Into::into).collect());
    }

    /// Two-column `field, value` table.
    pub fn fields(pairs: Vec<(&str, String)>) -> Self {
        let mut t = Table::new(["field", "value"]);
        for (k, v) in pairs {
            t.push([k.to_string(), v]);
        }
        t
    }
}

pub struct Report {
    pub json: Value,
    /// Printed above the table in table form only.
    pub summary: Option<Table>,
    pub table: Table,
}

/// Rebuilds every object with keys inserted in sorted order, so the output
/// does not depend on how `serde_json` stores maps.
pub fn canonical(v: Value) -> Value {
    match v {
        Value::Object(m) => {
            let mut entries: Vec<(String, Value)> = m.into_iter().collect();
            entries.sort_by(|a, b| a.0.cmp(&b.0));
            let mut out = Map::new();
            for (k, v) in entries {
                out.insert(k, canonical(v));
            }
            Value::Object(out)
        }
        Value::Array(a) => Value::Array(a.into_iter().map(canonical).collect()),
        other => other,
    }
}

pub fn json_string(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(&canonical(v.clone())).expect("JSON values serialize");
    s.push('\n');
    s
}

pub fn render_table(t: &Table) -> String {
    let cols = t.headers.len();
    let mut widths: Vec<usize> = t.headers.iter().map(|h| h.chars().count()).collect();
    for row in &t.rows {
        for (i, cell) in row.iter().enumerate().take(cols) {
            widths[i] = widths[i].max(cell.chars().count());
        }
    }
    let line = |cells: &[String]| {
        let mut s = String::new();
        for (i, cell) in cells.iter().enumerate().take(cols) {
            if i + 1 == cols {
                s.push_str(cell);
            } else {
                s.push_str(cell);
                s.push_str(&" ".repeat(widths[i] - cell.chars().count() + 2));
            }
        }
        s.truncate(s.trim_end().len());
        s.push('\n');
        s
    };
    let mut out = line(&t.headers);
    let rule: Vec<String> = widths.iter().map(|&w| "─".repeat(w)).collect();
    out.push_str(&line(&rule));
    for row in &t.rows {
        out.push_str(&line(row));
    }
    out
}

pub fn render_csv(t: &Table) -> String {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::CRLF).from_writer(Vec::new());
    w.write_record(&t.headers).expect("in-memory write");
    for row in &t.rows {
        w.write_record(row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("UTF-8 input")
}

pub fn emit(report: &Report, format: Format) -> String {
    match format {
        Format::Json => json_string(&report.json),
        Format::Csv => render_csv(&report.table),
        Format::Table => {
            let mut out = String::new();
            if let Some(s) = &report.summary {
                out.push_str(&render_table(s));
                out.push('\n');
            }
            out.push_str(&render_table(&report.table));
            out
        }
    }
}
