use std::io::Write;
use std::path::{Path, PathBuf};

use clap::ValueEnum;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::error::CliError;

pub const SCHEMA: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// Everything a command produces; rendering is chosen afterwards.
pub struct Outcome {
    pub command: &'static str,
    pub pass: bool,
    pub body: Value,
    pub text: String,
    pub csv: Option<String>,
}

impl Outcome {
    pub fn json(&self) -> Value {
        let mut v = json!({ "schema": SCHEMA, "command": self.command, "pass": self.pass });
        if let (Value::Object(out), Value::Object(body)) = (&mut v, &self.body) {
            for (k, x) in body {
                out.insert(k.clone(), x.clone());
            }
        }
        v
    }

    pub fn render(&self, format: Format) -> Result<String, CliError> {
        match format {
            Format::Json => Ok(format!("{}\n", serde_json::to_string_pretty(&self.json()).expect("serializable"))),
            Format::Text => Ok(self.text.clone()),
            Format::Csv => self
                .csv
                .clone()
                .ok_or_else(|| CliError::Config(format!("{} has no csv output", self.command))),
        }
    }
}

fn extension(format: Format) -> &'static str {
    match format {
        Format::Json => "json",
        Format::Csv => "csv",
        Format::Text => "txt",
    }
}

/// Prints the rendering and, when `dir` is set, also writes it to `dir/<command>.<ext>`.
pub fn emit(outcome: &Outcome, format: Format, dir: Option<&Path>) -> Result<(), CliError> {
    let body = outcome.render(format)?;
    if let Some(dir) = dir {
        let path: PathBuf = dir.join(format!("{}.{}", outcome.command, extension(format)));
        let io = |source| CliError::Io {
            path: path.display().to_string(),
            source,
        };
        std::fs::create_dir_all(dir).map_err(io)?;
        std::fs::write(&path, &body).map_err(io)?;
    }
    let mut out = std::io::stdout().lock();
    // a closed pipe is not worth a failure exit
    let _ = out.write_all(body.as_bytes());
    Ok(())
}
