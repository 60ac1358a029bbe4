//! Rendering of command results as JSON or CSV, to stdout or a file.

use std::io::Write;
use std::path::Path;

use bargain_core::io::{write_atomic, SCHEMA_VERSION};
use bargain_core::{Error, Result};
use serde_json::Value;

use crate::Format;

pub struct Table {
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str], rows: Vec<Vec<String>>) -> Self {
        Self { header: header.iter().map(|h| h.to_string()).collect(), rows }
    }

    fn to_csv(&self) -> Result<String> {
        let mut wtr = csv::Writer::from_writer(Vec::new());
        wtr.write_record(&self.header).map_err(|e| Error::Config(e.to_string()))?;
        for row in &self.rows {
            wtr.write_record(row).map_err(|e| Error::Config(e.to_string()))?;
        }
        let bytes = wtr.into_inner().map_err(|e| Error::Config(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("csv of strings is UTF-8"))
    }
}

/// Empty cell for a missing value.
pub fn opt(x: Option<f64>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

pub struct Output {
    json: String,
    csv: Result<String>,
}

impl Output {
    /// Stamps `body` with the schema version.
    pub fn new(mut body: Value, table: Table) -> Self {
        if let Value::Object(map) = &mut body {
            map.insert("schema_version".into(), SCHEMA_VERSION.into());
        }
        let json = serde_json::to_string_pretty(&body).expect("values serialize");
        Self { json, csv: table.to_csv() }
    }

    /// Already rendered forms that carry their own schema version.
    pub fn raw(json: String, csv: String) -> Self {
        Self { json, csv: Ok(csv) }
    }

    pub fn emit(self, command: &str, format: Format, dir: Option<&std::path::PathBuf>) -> Result<()> {
        let (mut text, ext) = match format {
            Format::Json => (self.json, "json"),
            Format::Csv => (self.csv?, "csv"),
        };
        if !text.ends_with('\n') {
            text.push('\n');
        }
        match dir {
            Some(dir) => write_to(dir, &format!("{command}.{ext}"), &text),
            None => {
                std::io::stdout().lock().write_all(text.as_bytes())?;
                Ok(())
            }
        }
    }
}

fn write_to(dir: &Path, name: &str, text: &str) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    let path = dir.join(name);
    write_atomic(&path, text.as_bytes())?;
    eprintln!("wrote {}", path.display());
    Ok(())
}
