use std::io::Write;
use std::path::Path;
use std::process::ExitCode;

use clap::ValueEnum;
use serde_json::{json, Value};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug)]
pub enum CliError {
    Core(subconc::Error),
    Usage(String),
    Io(String),
}

impl CliError {
    fn code(&self) -> &'static str {
        match self {
            CliError::Core(e) => e.code(),
            CliError::Usage(_) => "usage_error",
            CliError::Io(_) => "io_error",
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Core(e) => e.to_string(),
            CliError::Usage(m) | CliError::Io(m) => m.clone(),
        }
    }

    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}

impl From<subconc::Error> for CliError {
    fn from(e: subconc::Error) -> Self {
        CliError::Core(e)
    }
}

pub fn report_error(e: &CliError) -> ExitCode {
    let body = json!({
        "schema_version": SCHEMA_VERSION,
        "error": {"code": e.code(), "message": e.message()},
    });
    eprintln!("{body}");
    ExitCode::from(e.exit_code())
}

/// A finished report: JSON always, and a dedicated CSV form for tables.
pub struct Report {
    pub json: Value,
    pub csv: Option<String>,
    csv_by_default: bool,
}

impl Report {
    pub fn new(command: &str, mut body: Value) -> Self {
        let object = body.as_object_mut().expect("reports are JSON objects");
        object.insert("schema_version".into(), SCHEMA_VERSION.into());
        object.insert("command".into(), command.into());
        Report {
            json: body,
            csv: None,
            csv_by_default: false,
        }
    }

    pub fn with_csv(mut self, csv: String, by_default: bool) -> Self {
        self.csv = Some(csv);
        self.csv_by_default = by_default;
        self
    }

    pub fn render(&self, format: Option<Format>) -> Result<String, CliError> {
        let default = if self.csv_by_default {
            Format::Csv
        } else {
            Format::Json
        };
        Ok(match format.unwrap_or(default) {
            Format::Json => {
                let mut text = serde_json::to_string_pretty(&self.json)
                    .map_err(|e| CliError::Io(format!("cannot serialize report: {e}")))?;
                text.push('\n');
                text
            }
            Format::Csv => match &self.csv {
                Some(csv) => csv.clone(),
                None => flat_csv(&self.json),
            },
        })
    }
}

/// `key,value` rows with dotted paths for reports that are not tables.
fn flat_csv(value: &Value) -> String {
    fn walk(prefix: &str, value: &Value, rows: &mut Vec<(String, String)>) {
        let join = |key: &str| {
            if prefix.is_empty() {
                key.to_string()
            } else {
                format!("{prefix}.{key}")
            }
        };
        match value {
            Value::Object(map) => {
                for (k, v) in map {
                    walk(&join(k), v, rows);
                }
            }
            Value::Array(items) => {
                for (i, v) in items.iter().enumerate() {
                    walk(&join(&i.to_string()), v, rows);
                }
            }
            Value::Null => rows.push((prefix.into(), String::new())),
            Value::String(s) => rows.push((prefix.into(), s.clone())),
            other => rows.push((prefix.into(), other.to_string())),
        }
    }
    let mut rows = Vec::new();
    walk("", value, &mut rows);
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer
        .write_record(["key", "value"])
        .expect("in-memory write");
    for row in rows {
        writer
            .write_record([row.0, row.1])
            .expect("in-memory write");
    }
    String::from_utf8(writer.into_inner().expect("in-memory flush")).expect("UTF-8 fields")
}

pub fn write(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| CliError::Io(format!("cannot write to stdout: {e}")))
        }
    }
}
