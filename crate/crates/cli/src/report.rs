use std::fs;
use std::io::{self, Write};
use std::path::Path;

use clap::ValueEnum;
use num_complex::Complex64;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// A rendered command result: a JSON object, one CSV table and a text view.
pub struct Report {
    pub json: serde_json::Value,
    pub table: Table,
    pub text: String,
    /// False when a check inside the command failed.
    pub pass: bool,
}

impl Report {
    pub fn new<T: Serialize>(value: &T, table: Table, text: String, pass: bool) -> Self {
        Self {
            json: serde_json::to_value(value).expect("report types serialize"),
            table,
            text,
            pass,
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.text.clone(),
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json).expect("json value");
                s.push('\n');
                s
            }
            Format::Csv => self.table.to_csv(),
        }
    }

    pub fn emit(&self, format: Format, out: Option<&Path>) -> io::Result<()> {
        let body = self.render(format);
        match out {
            Some(path) => fs::write(path, body),
            None => io::stdout().lock().write_all(body.as_bytes()),
        }
    }
}

pub struct Table {
    header: Vec<&'static str>,
    rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&'static str]) -> Self {
        Self {
            header: header.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    fn to_csv(&self) -> String {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        w.write_record(&self.header).expect("write to memory");
        for row in &self.rows {
            w.write_record(row).expect("write to memory");
        }
        String::from_utf8(w.into_inner().expect("flush to memory")).expect("csv is utf-8")
    }
}

/// Shortest decimal that parses back to the same `f64`.
pub fn exact(x: f64) -> String {
    format!("{x}")
}

pub fn exact_opt(x: Option<f64>) -> String {
    x.map(exact).unwrap_or_default()
}

/// Six decimals, without a sign on zero.
pub fn six(x: f64) -> String {
    let s = format!("{x:.6}");
    if s == "-0.000000" {
        "0.000000".into()
    } else {
        s
    }
}

pub fn six_c(z: Complex64) -> String {
    let im = six(z.im.abs());
    let sign = if z.im < 0.0 && im != "0.000000" {
        '-'
    } else {
        '+'
    };
    format!("{} {sign} {im}i", six(z.re))
}
