//! Rendering a finished experiment: tables and checks as CSV or a single JSON
//! document, always next to its manifest.

use std::path::Path;

use serde_json::json;

use crate::error::{Error, Result};
use crate::experiments::Report;
use crate::formats::float;
use crate::manifest::ExperimentManifest;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// What the process should print once the files, if any, are written.
#[derive(Debug, Default)]
pub struct Rendered {
    pub stdout: String,
    pub stderr: String,
}

fn check_lines(report: &Report) -> String {
    let mut out = String::new();
    for c in &report.checks {
        let verdict = if c.passed { "PASS" } else { "FAIL" };
        match c.bound {
            Some(b) => out.push_str(&format!("{verdict} {}: {} <= {}\n", c.name, float(c.value), float(b))),
            None => out.push_str(&format!("{verdict} {}: {}\n", c.name, float(c.value))),
        }
    }
    out
}

fn write(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).map_err(|source| Error::Write { path: path.to_owned(), source })
}

/// With `out`, writes `<id>.<table>.csv` per table plus `<id>.checks.csv`
/// (or one `<id>.json`) and `<id>.manifest.json` into the directory.
/// Without it, data goes to stdout (CSV tables separated by a blank line)
/// and the manifest to stderr.
pub fn render(mut manifest: ExperimentManifest, report: &Report, format: Format, out: Option<&Path>) -> Result<Rendered> {
    let hash = manifest.hash();
    let mut tables = report.tables.clone();
    tables.push(report.checks_table());

    let mut files: Vec<(String, String)> = Vec::new();
    match format {
        Format::Csv => {
            for t in &tables {
                files.push((format!("{}.{}.csv", manifest.id, t.name), t.to_csv(&hash)));
            }
        }
        Format::Json => {
            let doc = json!({
                "manifest_hash": hash,
                "id": manifest.id,
                "tables": tables.iter().map(|t| t.to_json(&hash)).collect::<Vec<_>>(),
            });
            files.push((format!("{}.json", manifest.id), serde_json::to_string_pretty(&doc)? + "\n"));
        }
    }

    let mut rendered = Rendered::default();
    match out {
        Some(dir) => {
            std::fs::create_dir_all(dir).map_err(|source| Error::Write { path: dir.to_owned(), source })?;
            manifest.outputs = files.iter().map(|(name, _)| name.clone()).collect();
            for (name, contents) in &files {
                write(&dir.join(name), contents)?;
            }
            let manifest_name = format!("{}.manifest.json", manifest.id);
            write(&dir.join(&manifest_name), &(manifest.to_json() + "\n"))?;
            rendered.stderr = format!("wrote {} files to {}\n", files.len() + 1, dir.display());
        }
        None => {
            manifest.outputs = vec!["-".into()];
            rendered.stdout = files.iter().map(|(_, c)| c.as_str()).collect::<Vec<_>>().join("\n");
            rendered.stderr = manifest.to_json() + "\n";
        }
    }
    rendered.stderr.push_str(&check_lines(report));
    Ok(rendered)
}
