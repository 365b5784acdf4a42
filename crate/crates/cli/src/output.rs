//! Rendering of command results as JSON, CSV or Markdown.

use std::io::Write;

use clap::ValueEnum;
use kprimitive::MarginReport;
use serde::Serialize;
use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Md,
}

/// Top-level document written by every subcommand.
#[derive(Debug, Serialize)]
pub struct Document {
    pub tool_version: &'static str,
    pub command: &'static str,
    pub params: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub result: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reports: Option<Vec<MarginReport>>,
}

impl Document {
    pub fn new(command: &'static str, params: impl Serialize) -> Self {
        Document {
            tool_version: env!("CARGO_PKG_VERSION"),
            command,
            params: serde_json::to_value(params).expect("parameters serialize"),
            result: None,
            reports: None,
        }
    }

    pub fn with_result(mut self, result: impl Serialize) -> Self {
        self.result = Some(serde_json::to_value(result).expect("results serialize"));
        self
    }

    pub fn with_reports(mut self, reports: Vec<MarginReport>) -> Self {
        self.reports = Some(reports);
        self
    }

    pub fn write(&self, format: Format, out: &mut impl Write) -> anyhow_free::Result<()> {
        match format {
            Format::Json => {
                serde_json::to_writer_pretty(&mut *out, self)?;
                writeln!(out)?;
            }
            Format::Csv | Format::Md => {
                let rows = self.rows()?;
                let (headers, cells) = tabulate(&rows);
                if format == Format::Csv {
                    let mut w = csv::Writer::from_writer(&mut *out);
                    w.write_record(&headers)?;
                    for row in cells {
                        w.write_record(&row)?;
                    }
                    w.flush()?;
                } else {
                    write_markdown(out, &headers, &cells)?;
                }
            }
        }
        Ok(())
    }

    /// One flattened row per report, or per element of an array result, or
    /// a single row for an object result.
    fn rows(&self) -> anyhow_free::Result<Vec<Vec<(String, String)>>> {
        if let Some(reports) = &self.reports {
            return reports
                .iter()
                .map(|r| Ok(flatten(&serde_json::to_value(r)?)))
                .collect();
        }
        Ok(match &self.result {
            Some(Value::Array(items)) => items.iter().map(flatten).collect(),
            Some(v) => vec![flatten(v)],
            None => Vec::new(),
        })
    }
}

/// Small error plumbing so the writers can use `?` across io, csv and json.
pub mod anyhow_free {
    pub type Result<T> = std::result::Result<T, Box<dyn std::error::Error>>;
}

/// Dotted-key flattening; arrays of scalars are joined with spaces.
fn flatten(v: &Value) -> Vec<(String, String)> {
    let mut out = Vec::new();
    flatten_into("", v, &mut out);
    out
}

fn flatten_into(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    let key = |name: &str| {
        if prefix.is_empty() {
            name.to_string()
        } else {
            format!("{prefix}.{name}")
        }
    };
    match v {
        Value::Object(map) => flatten_object(prefix, map, out),
        Value::Array(items) if items.iter().all(|i| !i.is_object() && !i.is_array()) => {
            let joined: Vec<String> = items.iter().map(scalar).collect();
            out.push((prefix.to_string(), joined.join(" ")));
        }
        Value::Array(items) => {
            for (i, item) in items.iter().enumerate() {
                flatten_into(&key(&i.to_string()), item, out);
            }
        }
        other => out.push((prefix.to_string(), scalar(other))),
    }
}

fn flatten_object(prefix: &str, map: &Map<String, Value>, out: &mut Vec<(String, String)>) {
    for (name, value) in map {
        let key = if prefix.is_empty() {
            name.clone()
        } else {
            format!("{prefix}.{name}")
        };
        flatten_into(&key, value, out);
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Column order is first appearance across rows.
fn tabulate(rows: &[Vec<(String, String)>]) -> (Vec<String>, Vec<Vec<String>>) {
    let mut headers: Vec<String> = Vec::new();
    for row in rows {
        for (k, _) in row {
            if !headers.contains(k) {
                headers.push(k.clone());
            }
        }
    }
    let cells = rows
        .iter()
        .map(|row| {
            headers
                .iter()
                .map(|h| row.iter().find(|(k, _)| k == h).map(|(_, v)| v.clone()).unwrap_or_default())
                .collect()
        })
        .collect();
    (headers, cells)
}

fn write_markdown(out: &mut impl Write, headers: &[String], cells: &[Vec<String>]) -> std::io::Result<()> {
    let esc = |s: &str| s.replace('|', "\\|");
    writeln!(out, "| {} |", headers.iter().map(|h| esc(h)).collect::<Vec<_>>().join(" | "))?;
    writeln!(out, "|{}", " --- |".repeat(headers.len()))?;
    for row in cells {
        writeln!(out, "| {} |", row.iter().map(|c| esc(c)).collect::<Vec<_>>().join(" | "))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn flattening_uses_dotted_keys() {
        let v = json!({"a": 1, "b": {"c": [1, 2], "d": [{"e": true}]}, "s": "x"});
        assert_eq!(
            flatten(&v),
            vec![
                ("a".to_string(), "1".to_string()),
                ("b.c".to_string(), "1 2".to_string()),
                ("b.d.0.e".to_string(), "true".to_string()),
                ("s".to_string(), "x".to_string()),
            ]
        );
    }

    #[test]
    fn table_union_of_columns() {
        let rows = vec![
            vec![("a".to_string(), "1".to_string())],
            vec![("b".to_string(), "2".to_string()), ("a".to_string(), "3".to_string())],
        ];
        let (h, c) = tabulate(&rows);
        assert_eq!(h, vec!["a", "b"]);
        assert_eq!(c, vec![vec!["1", ""], vec!["3", "2"]]);
    }
}
