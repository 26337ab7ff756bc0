//! Report documents: a JSON body for machines and a few lines for humans.

use serde_json::Value;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    #[default]
    Text,
}

#[derive(Clone, Debug)]
pub struct Report {
    /// Object with sorted keys (serde_json's default map).
    pub json: Value,
    pub text: Vec<String>,
}

impl Report {
    pub fn new(json: Value) -> Self {
        Report { json, text: Vec::new() }
    }

    pub fn line(&mut self, line: impl Into<String>) {
        self.text.push(line.into());
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => crate::document::canonical_json(&self.json),
            Format::Text => {
                let mut s = self.text.join("\n");
                s.push('\n');
                s
            }
        }
    }
}

/// A command's result: what to print and the process exit code.
#[derive(Clone, Debug)]
pub struct Output {
    pub stdout: String,
    pub code: u8,
}
