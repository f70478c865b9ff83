use std::io::{self, Write};

use clap::ValueEnum;
use indexmap::IndexMap;
use serde::Serialize;

/// One result row: named fields, every value a decimal or text string.
pub type Row = IndexMap<String, String>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Plain,
    Csv,
    Json,
}

/// Machine-readable result of one command. Big integers are carried as
/// decimal strings so nothing passes through floating point.
#[derive(Debug, Clone, Serialize)]
pub struct OutputRecord {
    pub command: String,
    pub parameters: IndexMap<String, String>,
    pub results: Vec<Row>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub summary: Vec<Row>,
    /// Replacement text for the first CSV header cell.
    #[serde(skip)]
    pub csv_corner: Option<String>,
    /// Hand-laid plain output; the generic column layout otherwise.
    #[serde(skip)]
    pub plain: Option<String>,
}

impl OutputRecord {
    pub fn new(command: &str) -> Self {
        OutputRecord {
            command: command.to_string(),
            parameters: IndexMap::new(),
            results: Vec::new(),
            summary: Vec::new(),
            csv_corner: None,
            plain: None,
        }
    }

    pub fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.parameters.insert(key.to_string(), value.to_string());
        self
    }

    pub fn write(&self, format: Format, out: &mut dyn Write) -> io::Result<()> {
        match format {
            Format::Plain => match &self.plain {
                Some(text) => out.write_all(text.as_bytes()),
                None => {
                    write_columns(&self.results, out)?;
                    if !self.summary.is_empty() {
                        writeln!(out)?;
                        write_columns(&self.summary, out)?;
                    }
                    Ok(())
                }
            },
            Format::Csv => self.write_csv(out),
            Format::Json => {
                serde_json::to_writer_pretty(&mut *out, self)?;
                writeln!(out)
            }
        }
    }

    fn write_csv(&self, out: &mut dyn Write) -> io::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        if let Some(first) = self.results.first() {
            let mut header: Vec<&str> = first.keys().map(String::as_str).collect();
            if let (Some(corner), Some(cell)) = (&self.csv_corner, header.first_mut()) {
                *cell = corner;
            }
            w.write_record(&header)?;
        }
        for row in &self.results {
            w.write_record(row.values())?;
        }
        w.flush()
    }
}

/// Whitespace-aligned columns with a header line. The last column is left
/// unpadded so one very long value does not widen every other line.
fn write_columns(rows: &[Row], out: &mut dyn Write) -> io::Result<()> {
    let Some(first) = rows.first() else {
        return Ok(());
    };
    let keys: Vec<&String> = first.keys().collect();
    let widths: Vec<usize> = keys
        .iter()
        .map(|k| {
            rows.iter()
                .filter_map(|r| r.get(*k))
                .map(String::len)
                .chain([k.len()])
                .max()
                .unwrap_or(0)
        })
        .collect();
    let last = keys.len() - 1;
    let line = |cells: Vec<&str>| {
        cells
            .iter()
            .zip(&widths)
            .enumerate()
            .map(|(i, (c, w))| {
                if i == last {
                    c.to_string()
                } else {
                    format!("{c:>w$}")
                }
            })
            .collect::<Vec<_>>()
            .join("  ")
    };
    writeln!(out, "{}", line(keys.iter().map(|k| k.as_str()).collect()))?;
    for row in rows {
        let cells = keys
            .iter()
            .map(|k| row.get(*k).map_or("", String::as_str))
            .collect();
        writeln!(out, "{}", line(cells))?;
    }
    Ok(())
}

/// Builds a [`Row`] from `key => value` pairs.
#[macro_export]
macro_rules! row {
    ($($key:expr => $value:expr),* $(,)?) => {{
        let mut r = $crate::output::Row::new();
        $( r.insert($key.to_string(), $value.to_string()); )*
        r
    }};
}

#[cfg(test)]
mod tests {
    use super::*;

    fn render(rec: &OutputRecord, format: Format) -> String {
        let mut buf = Vec::new();
        rec.write(format, &mut buf).unwrap();
        String::from_utf8(buf).unwrap()
    }

    #[test]
    fn csv_corner_replaces_first_header() {
        let mut rec = OutputRecord::new("table");
        rec.results.push(row!("k" => 2, "0" => 1, "1" => 2));
        rec.csv_corner = Some("k\\n".into());
        assert_eq!(render(&rec, Format::Csv), "k\\n,0,1\n2,1,2\n");
    }

    #[test]
    fn json_keeps_big_integers_as_strings() {
        let mut rec = OutputRecord::new("count").param("k", 9);
        rec.results
            .push(row!("value" => "123456789012345678901234567890"));
        let v: serde_json::Value = serde_json::from_str(&render(&rec, Format::Json)).unwrap();
        assert_eq!(v["results"][0]["value"], "123456789012345678901234567890");
        assert_eq!(v["parameters"]["k"], "9");
        assert!(v.get("summary").is_none());
    }

    #[test]
    fn plain_columns_align() {
        let mut rec = OutputRecord::new("x");
        rec.results.push(row!("a" => 1, "bb" => 22));
        rec.results.push(row!("a" => 333, "bb" => 4));
        assert_eq!(render(&rec, Format::Plain), "  a  bb\n  1  22\n333  4\n");
    }
}
