//! Rendering: every subcommand produces a column table (for `csv`/`pretty`)
//! plus a JSON value mirroring the underlying record fields.

use clap::ValueEnum;
use std::io::Write;
use std::path::Path;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Pretty,
}

#[derive(Debug, Clone)]
pub enum Cell {
    Float(f64),
    Int(u64),
    Text(String),
    Bool(bool),
    /// Not applicable / not available; renders as an empty CSV field.
    Empty,
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Float(x) => f17(*x),
            Cell::Int(n) => n.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
            Cell::Empty => String::new(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Table { columns: columns.iter().map(|c| c.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

/// 17 significant digits: enough to reproduce the `f64` bit pattern exactly
/// when re-parsed.
pub fn f17(x: f64) -> String {
    format!("{x:.16e}")
}

/// JSON number, with NaN/inf collapsing to `null`.
pub fn num(x: f64) -> serde_json::Value {
    serde_json::Value::from(x)
}

pub fn opt_num(x: Option<f64>) -> serde_json::Value {
    match x {
        Some(v) => num(v),
        None => serde_json::Value::Null,
    }
}

fn render_csv(table: &Table) -> String {
    let mut out = String::new();
    out.push_str(&table.columns.join(","));
    out.push('\n');
    for row in &table.rows {
        let cells: Vec<String> = row.iter().map(Cell::render).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

fn render_pretty(table: &Table) -> String {
    let mut widths: Vec<usize> = table.columns.iter().map(String::len).collect();
    let rendered: Vec<Vec<String>> = table
        .rows
        .iter()
        .map(|row| row.iter().map(Cell::render).collect())
        .collect();
    for row in &rendered {
        for (i, cell) in row.iter().enumerate() {
            widths[i] = widths[i].max(cell.len());
        }
    }
    let mut out = String::new();
    for (i, col) in table.columns.iter().enumerate() {
        out.push_str(&format!("{:<width$}", col, width = widths[i] + 2));
    }
    out.truncate(out.trim_end().len());
    out.push('\n');
    for row in &rendered {
        let mut line = String::new();
        for (i, cell) in row.iter().enumerate() {
            line.push_str(&format!("{:<width$}", cell, width = widths[i] + 2));
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

/// Write the report in the chosen format to `out` (or stdout).
pub fn emit(
    format: Format,
    table: &Table,
    json: &serde_json::Value,
    out: Option<&Path>,
) -> std::io::Result<()> {
    let text = match format {
        Format::Csv => render_csv(table),
        Format::Pretty => render_pretty(table),
        Format::Json => {
            let mut s = serde_json::to_string_pretty(json).expect("serializable value");
            s.push('\n');
            s
        }
    };
    match out {
        Some(path) => std::fs::write(path, text),
        None => std::io::stdout().write_all(text.as_bytes()),
    }
}
