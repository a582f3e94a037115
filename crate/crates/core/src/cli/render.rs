use std::io::Write;

use clap::ValueEnum;
use num_complex::Complex64;
use serde_json::{json, Value};

use crate::cpoly::CPoly;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}

/// One command result in all three renderings.
#[derive(Debug, Clone)]
pub struct Document {
    pub json: Value,
    /// Summary lines printed above the table.
    pub summary: Vec<String>,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Document {
    pub fn new(json: Value) -> Self {
        Self {
            json,
            summary: Vec::new(),
            header: Vec::new(),
            rows: Vec::new(),
        }
    }

    pub fn summary(mut self, line: impl Into<String>) -> Self {
        self.summary.push(line.into());
        self
    }

    pub fn columns(mut self, header: &[&str]) -> Self {
        self.header = header.iter().map(|h| h.to_string()).collect();
        self
    }

    pub fn row(&mut self, cells: Vec<String>) {
        self.rows.push(cells);
    }

    pub fn write(&self, format: Format, out: &mut dyn Write) -> std::io::Result<()> {
        match format {
            Format::Json => {
                serde_json::to_writer_pretty(&mut *out, &self.json)?;
                writeln!(out)
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(out);
                w.write_record(&self.header)?;
                for r in &self.rows {
                    w.write_record(r)?;
                }
                w.flush()
            }
            Format::Table => {
                for line in &self.summary {
                    writeln!(out, "{line}")?;
                }
                if self.header.is_empty() {
                    return Ok(());
                }
                if !self.summary.is_empty() {
                    writeln!(out)?;
                }
                let mut widths: Vec<usize> =
                    self.header.iter().map(|h| h.chars().count()).collect();
                for r in &self.rows {
                    for (w, cell) in widths.iter_mut().zip(r) {
                        *w = (*w).max(cell.chars().count());
                    }
                }
                let line = |cells: &[String]| {
                    cells
                        .iter()
                        .zip(&widths)
                        .map(|(c, w)| format!("{c:<w$}"))
                        .collect::<Vec<_>>()
                        .join("  ")
                        .trim_end()
                        .to_string()
                };
                writeln!(out, "{}", line(&self.header))?;
                writeln!(
                    out,
                    "{}",
                    widths
                        .iter()
                        .map(|w| "-".repeat(*w))
                        .collect::<Vec<_>>()
                        .join("  ")
                )?;
                for r in &self.rows {
                    writeln!(out, "{}", line(r))?;
                }
                Ok(())
            }
        }
    }
}

pub fn cjson(z: Complex64) -> Value {
    json!([z.re, z.im])
}

pub fn pjson(p: &CPoly<f64>) -> Value {
    Value::Array(p.coeffs().iter().map(|z| cjson(*z)).collect())
}

pub fn real_json(x: f64) -> Value {
    if x.is_finite() {
        json!(x)
    } else {
        Value::Null
    }
}

/// `a+bi` with 12 significant digits.
pub fn ctext(z: Complex64) -> String {
    format!("{:.12}{:+.12}i", clean(z.re), clean(z.im))
}

pub fn rtext(x: f64) -> String {
    if x.is_finite() {
        format!("{:.12}", clean(x))
    } else {
        "inf".into()
    }
}

fn clean(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x
    }
}

pub fn num(x: f64) -> String {
    if x.is_finite() {
        format!("{}", clean(x))
    } else {
        "inf".into()
    }
}
