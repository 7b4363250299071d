//! Report values and their three renderings. JSON objects come from
//! `serde_json::Map`, which keeps keys sorted, so output is byte-stable.

use serde_json::{Map, Value};
use weierstrass_limits::exact::scalar_to_string;
use weierstrass_limits::{BigQ, DensePoly};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Table { header: header.iter().map(|h| h.to_string()).collect(), rows: Vec::new() }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub body: Value,
    /// Used for csv output; reports without one are flattened.
    pub table: Option<Table>,
    /// Printed on stderr as a WARNING block and kept under `warnings` in json.
    pub warnings: Vec<String>,
}

impl Report {
    pub fn new(body: Value) -> Self {
        Report { body, table: None, warnings: Vec::new() }
    }

    pub fn with_table(mut self, table: Table) -> Self {
        self.table = Some(table);
        self
    }
}

pub fn scalar(q: &BigQ) -> Value {
    Value::String(scalar_to_string(q))
}

pub fn poly(p: &DensePoly<BigQ>) -> Value {
    Value::Array(p.coeffs().iter().map(scalar).collect())
}

pub fn object(pairs: Vec<(&str, Value)>) -> Value {
    let mut m = Map::new();
    for (k, v) in pairs {
        m.insert(k.to_string(), v);
    }
    Value::Object(m)
}

pub fn emit(report: &Report, format: Format) -> String {
    match format {
        Format::Json => {
            let mut body = report.body.clone();
            if !report.warnings.is_empty() {
                if let Value::Object(m) = &mut body {
                    m.insert("warnings".into(), Value::from(report.warnings.clone()));
                }
            }
            let mut s = serde_json::to_string_pretty(&body).expect("json values always serialize");
            s.push('\n');
            s
        }
        Format::Csv => {
            let table = report.table.clone().unwrap_or_else(|| flatten(&report.body));
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(&table.header).expect("in-memory write");
            for row in &table.rows {
                w.write_record(row).expect("in-memory write");
            }
            String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv output is utf-8")
        }
        Format::Pretty => {
            let mut out = String::new();
            match &report.table {
                Some(t) => pretty_table(t, &mut out),
                None => pretty_value(&report.body, 0, &mut out),
            }
            out
        }
    }
}

/// The stderr block for informational discrepancies.
pub fn warning_block(warnings: &[String]) -> Option<String> {
    if warnings.is_empty() {
        return None;
    }
    let mut s = String::from("WARNING\n");
    for w in warnings {
        s.push_str("  ");
        s.push_str(w);
        s.push('\n');
    }
    Some(s)
}

/// `path,value` rows for every leaf.
fn flatten(v: &Value) -> Table {
    fn walk(v: &Value, path: String, rows: &mut Vec<Vec<String>>) {
        match v {
            Value::Object(m) => {
                for (k, x) in m {
                    let p = if path.is_empty() { k.clone() } else { format!("{path}.{k}") };
                    walk(x, p, rows);
                }
            }
            Value::Array(a) => {
                for (i, x) in a.iter().enumerate() {
                    walk(x, format!("{path}[{i}]"), rows);
                }
            }
            _ => rows.push(vec![path, leaf(v)]),
        }
    }
    let mut t = Table::new(&["path", "value"]);
    walk(v, String::new(), &mut t.rows);
    t
}

fn leaf(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

fn pretty_table(t: &Table, out: &mut String) {
    let mut widths: Vec<usize> = t.header.iter().map(|h| h.len()).collect();
    for row in &t.rows {
        for (i, c) in row.iter().enumerate() {
            if i < widths.len() {
                widths[i] = widths[i].max(c.len());
            }
        }
    }
    let line = |cells: &[String], out: &mut String| {
        let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect();
        out.push_str(padded.join("  ").trim_end());
        out.push('\n');
    };
    line(&t.header, out);
    for row in &t.rows {
        line(row, out);
    }
}

fn pretty_value(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                if is_leafy(x) {
                    out.push_str(&format!("{pad}{k}: {}\n", inline(x)));
                } else {
                    out.push_str(&format!("{pad}{k}:\n"));
                    pretty_value(x, indent + 1, out);
                }
            }
        }
        Value::Array(a) => {
            for x in a {
                if is_leafy(x) {
                    out.push_str(&format!("{pad}- {}\n", inline(x)));
                } else {
                    out.push_str(&format!("{pad}-\n"));
                    pretty_value(x, indent + 1, out);
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", leaf(other))),
    }
}

fn is_leafy(v: &Value) -> bool {
    match v {
        Value::Object(m) => m.is_empty(),
        Value::Array(a) => a.iter().all(|x| !x.is_object() && !x.is_array()),
        _ => true,
    }
}

fn inline(v: &Value) -> String {
    match v {
        Value::Array(a) => format!("[{}]", a.iter().map(leaf).collect::<Vec<_>>().join(", ")),
        Value::Object(_) => "{}".into(),
        other => leaf(other),
    }
}
