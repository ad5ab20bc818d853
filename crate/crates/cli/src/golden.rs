//! Reference outputs stored in the repository and compared against fresh runs.

use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde_json::{json, Value};

use crate::args::{DEFAULT_D_MAX, DEFAULT_F_MAX};
use crate::commands::{self, Report};
use crate::render::table;
use reidtai_core::Mode;

/// Name of each reference file and the command run that produces it.
pub const DOCUMENTS: [&str; 5] = ["table1", "table2", "orders", "pairs", "multisets"];

pub fn default_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("golden")
}

pub fn produce(name: &str) -> Result<Report> {
    match name {
        "table1" => commands::table1_cmd(),
        "table2" => commands::table2_cmd(),
        "orders" => commands::orders_scan(DEFAULT_D_MAX),
        "pairs" => commands::pair_search(DEFAULT_F_MAX, Mode::ValueUnion),
        "multisets" => commands::multisets(Mode::ValueUnion, DEFAULT_F_MAX),
        _ => anyhow::bail!("unknown reference document {name:?}"),
    }
}

pub fn render(report: &Report) -> String {
    let mut s = serde_json::to_string_pretty(&report.envelope()).expect("JSON values serialize");
    s.push('\n');
    s
}

pub fn run(dir: Option<&Path>, regenerate: bool) -> Result<Report> {
    let dir = dir.map_or_else(default_dir, Path::to_path_buf);
    let mut files = Vec::new();
    let mut rows = Vec::new();
    let mut all_match = true;
    for name in DOCUMENTS {
        let fresh = produce(name)?;
        let path = dir.join(format!("{name}.json"));
        let status = if regenerate {
            std::fs::create_dir_all(&dir).with_context(|| format!("creating {}", dir.display()))?;
            std::fs::write(&path, render(&fresh)).with_context(|| format!("writing {}", path.display()))?;
            "written"
        } else {
            match std::fs::read_to_string(&path) {
                Err(_) => "missing",
                Ok(text) => match serde_json::from_str::<Value>(&text) {
                    Ok(stored) if stored == fresh.envelope() => "match",
                    _ => "mismatch",
                },
            }
        };
        all_match &= status == "match" || status == "written";
        rows.push(vec![name.to_string(), path.display().to_string(), status.to_string()]);
        files.push(json!({ "name": name, "path": path.display().to_string(), "status": status }));
    }
    let text = table(&["document", "path", "status"], &rows);
    let result = json!({ "dir": dir.display().to_string(), "regenerated": regenerate, "files": files });
    let mut report = Report::new("golden", result, text);
    report.conformant = all_match;
    report.hard_failure = true;
    Ok(report)
}
