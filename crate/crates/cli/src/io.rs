use std::fs;
use std::io::Write;
use std::path::PathBuf;

use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::json;

/// Exit codes: success/agreement, verified disagreement or failed check, input error.
pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug)]
pub struct CliError {
    pub message: String,
    pub pointer: Option<String>,
}

impl CliError {
    pub fn new(message: impl Into<String>) -> Self {
        CliError { message: message.into(), pointer: None }
    }

    pub fn to_json(&self) -> serde_json::Value {
        match &self.pointer {
            Some(p) => json!({ "error": self.message, "pointer": p }),
            None => json!({ "error": self.message }),
        }
    }
}

impl<E: std::fmt::Display> From<E> for CliError {
    fn from(e: E) -> Self {
        CliError::new(e.to_string())
    }
}

/// Inline JSON, or `@path` to read it from a file.
pub fn read_arg(arg: &str) -> Result<String, CliError> {
    match arg.strip_prefix('@') {
        Some(path) => fs::read_to_string(path).map_err(|e| CliError::new(format!("cannot read {path}: {e}"))),
        None => Ok(arg.to_string()),
    }
}

fn json_pointer(path: &serde_path_to_error::Path) -> String {
    use serde_path_to_error::Segment;
    let mut out = String::new();
    for seg in path.iter() {
        out.push('/');
        let s = match seg {
            Segment::Seq { index } => index.to_string(),
            Segment::Map { key } => key.clone(),
            Segment::Enum { variant } => variant.clone(),
            Segment::Unknown => "?".to_string(),
        };
        out.push_str(&s.replace('~', "~0").replace('/', "~1"));
    }
    out
}

/// Parses JSON, reporting schema violations with the JSON pointer of the offending value.
pub fn parse_json<T: DeserializeOwned>(text: &str) -> Result<T, CliError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let pointer = json_pointer(e.path());
        CliError { message: e.inner().to_string(), pointer: Some(if pointer.is_empty() { "/".into() } else { pointer }) }
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Table,
}

pub struct Output {
    pub format: Format,
    pub path: Option<PathBuf>,
}

impl Output {
    /// Writes the JSON value or its table rendering to the output file or stdout.
    pub fn emit<T: Serialize>(&self, value: &T, table: impl FnOnce() -> String) -> Result<(), CliError> {
        let text = match self.format {
            Format::Json => serde_json::to_string_pretty(value)? + "\n",
            Format::Table => table(),
        };
        match &self.path {
            Some(p) => fs::write(p, text).map_err(|e| CliError::new(format!("cannot write {}: {e}", p.display()))),
            None => {
                let mut out = std::io::stdout().lock();
                out.write_all(text.as_bytes())?;
                Ok(())
            }
        }
    }
}

/// `key: value` lines for the top level of a JSON object.
pub fn key_values(value: &serde_json::Value) -> String {
    let mut s = String::new();
    if let Some(map) = value.as_object() {
        for (k, v) in map {
            let shown = match v {
                serde_json::Value::String(x) => x.clone(),
                other => other.to_string(),
            };
            s += &format!("{k:<20} {shown}\n");
        }
    }
    s
}
