use std::fs::File;
use std::io::{self, Write};
use std::path::Path;

use serde_json::Value;

use crate::args::Format;

/// A command's result in a shape every output format can render.
pub struct Output {
    pub json: Value,
    pub headers: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
    /// Extra lines after the table; not part of CSV output.
    pub notes: Vec<String>,
}

impl Output {
    pub fn render(&self, format: Format) -> io::Result<Vec<u8>> {
        match format {
            Format::Json => {
                let mut buf = serde_json::to_vec_pretty(&self.json)?;
                buf.push(b'\n');
                Ok(buf)
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&self.headers)?;
                for row in &self.rows {
                    w.write_record(row)?;
                }
                w.into_inner().map_err(|e| io::Error::other(e.to_string()))
            }
            Format::Table => Ok(self.table().into_bytes()),
        }
    }

    fn table(&self) -> String {
        let mut widths: Vec<usize> = self.headers.iter().map(|h| h.chars().count()).collect();
        for row in &self.rows {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(cell.chars().count());
            }
        }
        let line = |cells: &mut dyn Iterator<Item = &str>| -> String {
            let padded: Vec<String> = cells
                .zip(&widths)
                .map(|(c, w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
                .collect();
            padded.join("  ").trim_end().to_string()
        };
        let mut out = String::new();
        if !self.headers.is_empty() {
            out += &line(&mut self.headers.iter().copied());
            out.push('\n');
        }
        for row in &self.rows {
            out += &line(&mut row.iter().map(String::as_str));
            out.push('\n');
        }
        for note in &self.notes {
            out += note;
            out.push('\n');
        }
        out
    }

    pub fn emit(&self, format: Format, path: Option<&Path>) -> io::Result<()> {
        let bytes = self.render(format)?;
        match path {
            Some(p) => File::create(p)?.write_all(&bytes),
            None => io::stdout().lock().write_all(&bytes),
        }
    }
}

pub fn ints(v: &[i64]) -> String {
    let parts: Vec<String> = v.iter().map(i64::to_string).collect();
    format!("({})", parts.join(","))
}

pub fn sci(x: f64) -> String {
    format!("{x:.3e}")
}
