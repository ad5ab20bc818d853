//! Reading JSON inputs with positioned diagnostics.

use std::fmt;
use std::path::Path;

use serde::de::DeserializeOwned;

/// A problem with user input; the binary exits with status 2.
#[derive(Debug)]
pub struct InputError(pub String);

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for InputError {}

pub fn input_error(msg: impl Into<String>) -> anyhow::Error {
    InputError(msg.into()).into()
}

pub fn read_text(path: &Path) -> anyhow::Result<String> {
    std::fs::read_to_string(path).map_err(|e| input_error(format!("{}: {e}", path.display())))
}

/// Parses `text` as `T`, reporting syntax and schema errors as `path:line:column`.
pub fn parse_json<T: DeserializeOwned>(path: &Path, text: &str) -> anyhow::Result<T> {
    serde_json::from_str(text).map_err(|e| {
        let what = match e.classify() {
            serde_json::error::Category::Syntax | serde_json::error::Category::Eof => "malformed JSON",
            _ => "invalid input",
        };
        // serde_json appends " at line L column C"; report the position once, up front
        let msg = e.to_string();
        let msg = msg.rsplit_once(" at line ").map_or(msg.as_str(), |(m, _)| m).to_string();
        input_error(format!("{}:{}:{}: {what}: {msg}", path.display(), e.line(), e.column()))
    })
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> anyhow::Result<T> {
    parse_json(path, &read_text(path)?)
}
