//! Report assembly and rendering as JSON, CSV or aligned text.

use std::fmt::Write as _;

use clap::ValueEnum;
use serde::Serialize;
use serde_json::Value;

/// Version of the JSON envelope.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// A rectangular summary used by the CSV and text renderers.
#[derive(Clone, Debug, Default)]
pub struct Table {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(headers: &[&str]) -> Self {
        Self {
            headers: headers.iter().map(|h| h.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push<I, S>(&mut self, row: I)
    where
        I: IntoIterator<Item = S>,
        S: ToString,
    {
        self.rows
            .push(row.into_iter().map(|x| x.to_string()).collect());
    }
}

/// The outcome of one command on one field.
#[derive(Clone, Debug)]
pub struct Run {
    pub field: String,
    pub ok: bool,
    pub result: Value,
    pub table: Table,
    /// Extra lines shown only in text output.
    pub notes: Vec<String>,
}

impl Run {
    pub fn new<T: Serialize>(field: impl Into<String>, ok: bool, result: &T, table: Table) -> Self {
        Self {
            field: field.into(),
            ok,
            result: serde_json::to_value(result).expect("report serializes"),
            table,
            notes: Vec::new(),
        }
    }

    pub fn note(mut self, line: impl Into<String>) -> Self {
        self.notes.push(line.into());
        self
    }
}

#[derive(Serialize)]
struct Envelope<'a> {
    schema_version: u32,
    command: &'a str,
    r: usize,
    s: usize,
    ok: bool,
    runs: Vec<JsonRun<'a>>,
}

#[derive(Serialize)]
struct JsonRun<'a> {
    field: &'a str,
    ok: bool,
    result: &'a Value,
}

pub fn render(format: Format, command: &str, r: usize, s: usize, runs: &[Run]) -> String {
    match format {
        Format::Json => {
            let env = Envelope {
                schema_version: SCHEMA_VERSION,
                command,
                r,
                s,
                ok: runs.iter().all(|x| x.ok),
                runs: runs
                    .iter()
                    .map(|x| JsonRun {
                        field: &x.field,
                        ok: x.ok,
                        result: &x.result,
                    })
                    .collect(),
            };
            let mut out = serde_json::to_string_pretty(&env).expect("envelope serializes");
            out.push('\n');
            out
        }
        Format::Csv => {
            let mut out = String::new();
            if let Some(first) = runs.first() {
                let mut header = vec!["field".to_string()];
                header.extend(first.table.headers.iter().cloned());
                out.push_str(&csv_line(&header));
            }
            for run in runs {
                for row in &run.table.rows {
                    let mut line = vec![run.field.clone()];
                    line.extend(row.iter().cloned());
                    out.push_str(&csv_line(&line));
                }
            }
            out
        }
        Format::Text => {
            let mut out = String::new();
            for (i, run) in runs.iter().enumerate() {
                if i > 0 {
                    out.push('\n');
                }
                let status = if run.ok { "ok" } else { "FAILED" };
                let _ = writeln!(out, "{command} B_{{{r},{s}}} over {}: {status}", run.field);
                for n in &run.notes {
                    let _ = writeln!(out, "  {n}");
                }
                out.push_str(&text_table(&run.table));
            }
            out
        }
    }
}

fn csv_line(cells: &[String]) -> String {
    let quoted: Vec<String> = cells
        .iter()
        .map(|c| {
            if c.contains([',', '"', '\n']) {
                format!("\"{}\"", c.replace('"', "\"\""))
            } else {
                c.clone()
            }
        })
        .collect();
    format!("{}\n", quoted.join(","))
}

fn text_table(t: &Table) -> String {
    if t.headers.is_empty() {
        return String::new();
    }
    let mut widths: Vec<usize> = t.headers.iter().map(|h| h.chars().count()).collect();
    for row in &t.rows {
        for (w, c) in widths.iter_mut().zip(row) {
            *w = (*w).max(c.chars().count());
        }
    }
    let line = |cells: &[String]| -> String {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
            .collect();
        format!("  {}\n", padded.join("  ").trim_end())
    };
    let mut out = line(&t.headers);
    for row in &t.rows {
        out.push_str(&line(row));
    }
    out
}
