// Copyright 2026 The stark-qsde Authors
// SPDX-License-Identifier: Apache-2.0

use std::fmt::Write as _;

pub const CSV_SCHEMA: &str = "qsde-stark csv v1";

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Cell {
    Float(f64),
    Int(i64),
}

impl Cell {
    fn render(&self, out: &mut String) {
        match self {
            // 17 significant digits round-trips any f64
            Cell::Float(x) => {
                let _ = write!(out, "{x:.16e}");
            }
            Cell::Int(i) => {
                let _ = write!(out, "{i}");
            }
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Float(x)
    }
}

impl From<bool> for Cell {
    fn from(b: bool) -> Self {
        Cell::Int(b as i64)
    }
}

/// A CSV table with a commented preamble:
///
/// ```text
/// # qsde-stark csv v1
/// # command: sweep
/// # column eta: sweep grid
/// eta,closed.gamma
/// 0.0000000000000000e0,1.0000000000000000e0
/// ```
#[derive(Debug, Clone, PartialEq)]
pub struct CsvTable {
    command: String,
    columns: Vec<(String, String)>,
    rows: Vec<Vec<Cell>>,
}

impl CsvTable {
    pub fn new(command: &str) -> Self {
        Self {
            command: command.to_string(),
            columns: Vec::new(),
            rows: Vec::new(),
        }
    }

    /// Adds a column and the method that produced it.
    pub fn column(mut self, name: &str, provenance: &str) -> Self {
        self.columns.push((name.to_string(), provenance.to_string()));
        self
    }

    pub fn columns(&self) -> impl Iterator<Item = &str> {
        self.columns.iter().map(|(n, _)| n.as_str())
    }

    pub fn push_row(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.columns.len(), "row width must match the header");
        self.rows.push(row);
    }

    pub fn rows(&self) -> &[Vec<Cell>] {
        &self.rows
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# {CSV_SCHEMA}");
        let _ = writeln!(out, "# command: {}", self.command);
        for (name, provenance) in &self.columns {
            let _ = writeln!(out, "# column {name}: {provenance}");
        }
        let names: Vec<&str> = self.columns().collect();
        let _ = writeln!(out, "{}", names.join(","));
        for row in &self.rows {
            for (i, cell) in row.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                cell.render(&mut out);
            }
            out.push('\n');
        }
        out
    }
}
