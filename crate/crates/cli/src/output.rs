//! Plain CSV with `#` comment lines.

use std::io::{self, Write};

/// Shortest round-trip decimal form, so identical values print identically.
pub fn format_value(x: f64) -> String {
    let a = x.abs();
    if x == 0.0 || (1e-4..1e15).contains(&a) || !x.is_finite() {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

pub enum Cell {
    Float(f64),
    Int(usize),
    Text(String),
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Float(x) => format_value(*x),
            Cell::Int(n) => n.to_string(),
            Cell::Text(s) => s.clone(),
        }
    }
}

/// Writes the header line lazily, just before the first column line, so
/// commands that fail validation print nothing.
pub struct CsvSink<'a> {
    out: &'a mut dyn Write,
    header: Option<String>,
}

impl<'a> CsvSink<'a> {
    pub fn new(out: &'a mut dyn Write) -> Self {
        Self { out, header: None }
    }

    pub fn header(&mut self, subcommand: &str, params: &[(String, String)]) {
        let mut line = format!("# casimir-scatter {} {subcommand}", env!("CARGO_PKG_VERSION"));
        for (k, v) in params {
            line.push_str(&format!(" {k}={v}"));
        }
        self.header = Some(line);
    }

    pub fn line(&mut self, text: &str) -> io::Result<()> {
        writeln!(self.out, "{text}")?;
        self.out.flush()
    }

    pub fn columns(&mut self, names: &[&str]) -> io::Result<()> {
        if let Some(h) = self.header.take() {
            writeln!(self.out, "{h}")?;
        }
        writeln!(self.out, "{}", names.join(","))
    }

    pub fn row(&mut self, cells: &[Cell]) -> io::Result<()> {
        let line: Vec<String> = cells.iter().map(Cell::render).collect();
        writeln!(self.out, "{}", line.join(","))?;
        self.out.flush()
    }

    pub fn incomplete(&mut self, reason: &str) -> io::Result<()> {
        writeln!(self.out, "# INCOMPLETE: {reason}")?;
        self.out.flush()
    }
}
