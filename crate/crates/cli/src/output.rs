use std::io::Write;

use clap::ValueEnum;
use serde_json::{Map, Value};

use ppa::format::SCHEMA_VERSION;

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    /// One JSON record per line, opened by a schema header.
    Structured,
}

/// Collects records so that output order never depends on evaluation order.
pub struct Emitter {
    format: Format,
    lines: Vec<String>,
}

impl Emitter {
    pub fn new(format: Format) -> Self {
        Emitter { format, lines: Vec::new() }
    }

    pub fn format(&self) -> Format {
        self.format
    }

    pub fn header(&mut self, command: &str, config: Value) {
        if self.format == Format::Structured {
            let mut rec = Map::new();
            rec.insert("schema".into(), Value::from(SCHEMA_VERSION));
            rec.insert("command".into(), Value::from(command));
            rec.insert("config".into(), config);
            self.lines.push(Value::Object(rec).to_string());
        }
    }

    /// `fields` must be a JSON object; `human` is the plain-text rendering.
    pub fn record(&mut self, kind: &str, fields: Value, human: impl FnOnce() -> String) {
        match self.format {
            Format::Structured => {
                let mut rec = Map::new();
                rec.insert("record".into(), Value::from(kind));
                if let Value::Object(m) = fields {
                    rec.extend(m);
                }
                self.lines.push(Value::Object(rec).to_string());
            }
            Format::Human => self.lines.push(human()),
        }
    }

    pub fn finish(self, code: u8) {
        let stdout = std::io::stdout();
        let mut lock = stdout.lock();
        for l in &self.lines {
            let _ = writeln!(lock, "{l}");
        }
        if self.format == Format::Structured {
            let _ = writeln!(lock, "{}", serde_json::json!({ "record": "summary", "exit": code }));
        }
    }
}
