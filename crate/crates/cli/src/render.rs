//! Output formats. Every command produces one JSON document plus tables;
//! CSV shows the first table, text shows everything.

use std::io::{self, Write};

use clap::ValueEnum;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Debug, Default)]
pub struct Table {
    pub title: Option<String>,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new<S: ToString>(header: &[S]) -> Self {
        Table {
            title: None,
            header: header.iter().map(|h| h.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn titled(mut self, title: impl Into<String>) -> Self {
        self.title = Some(title.into());
        self
    }

    pub fn push<S: ToString>(&mut self, row: &[S]) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row.iter().map(|c| c.to_string()).collect());
    }

    fn write_text(&self, out: &mut dyn Write) -> io::Result<()> {
        if let Some(t) = &self.title {
            writeln!(out, "{t}")?;
        }
        let mut widths: Vec<usize> = self.header.iter().map(|h| h.chars().count()).collect();
        for row in &self.rows {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(cell.chars().count());
            }
        }
        let line = |cells: &[String]| {
            let padded: Vec<String> = cells
                .iter()
                .zip(&widths)
                .map(|(c, &w)| format!("{c:<w$}"))
                .collect();
            padded.join("  ").trim_end().to_string()
        };
        writeln!(out, "{}", line(&self.header))?;
        let rule: Vec<String> = widths.iter().map(|&w| "-".repeat(w)).collect();
        writeln!(out, "{}", line(&rule))?;
        for row in &self.rows {
            writeln!(out, "{}", line(row))?;
        }
        Ok(())
    }
}

/// A rendered command result.
#[derive(Clone, Debug)]
pub struct Document {
    pub json: Value,
    pub tables: Vec<Table>,
    pub notes: Vec<String>,
}

impl Document {
    pub fn new(json: Value) -> Self {
        Document {
            json,
            tables: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn table(mut self, t: Table) -> Self {
        self.tables.push(t);
        self
    }

    pub fn note(mut self, n: impl Into<String>) -> Self {
        self.notes.push(n.into());
        self
    }

    pub fn write(&self, format: Format, out: &mut dyn Write) -> io::Result<()> {
        match format {
            Format::Json => {
                let mut json = self.json.clone();
                if let Value::Object(map) = &mut json {
                    map.insert("schema_version".into(), Value::from(1));
                }
                // serde_json maps are sorted, so the bytes are deterministic
                writeln!(out, "{}", serde_json::to_string(&json)?)
            }
            Format::Csv => {
                let Some(t) = self.tables.first() else {
                    return Ok(());
                };
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&t.header).map_err(io::Error::other)?;
                for row in &t.rows {
                    w.write_record(row).map_err(io::Error::other)?;
                }
                out.write_all(&w.into_inner().map_err(|e| io::Error::other(e.to_string()))?)
            }
            Format::Text => {
                for (n, t) in self.tables.iter().enumerate() {
                    if n > 0 {
                        writeln!(out)?;
                    }
                    t.write_text(out)?;
                }
                if !self.notes.is_empty() && !self.tables.is_empty() {
                    writeln!(out)?;
                }
                for n in &self.notes {
                    writeln!(out, "{n}")?;
                }
                Ok(())
            }
        }
    }
}
