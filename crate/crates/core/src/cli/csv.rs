//! Self-describing CSV output: `# `-prefixed manifest and config echo, one
//! header row, one row per grid point with 12 significant digits.

use std::io::Write;
use std::path::Path;

use crate::error::{Error, Result};
use crate::scenarios::{ScenarioKind, ScenarioResult};

use super::config_file::echo_config;

pub const CONFIG_BEGIN: &str = "# --- config ---";
pub const CONFIG_END: &str = "# --- end config ---";

/// Provenance of one run; written above the config echo.
#[derive(Clone, Debug, PartialEq)]
pub struct RunManifest {
    pub config_path: Option<String>,
    pub output_path: Option<String>,
    pub scenario: ScenarioKind,
    pub started_unix: u64,
    pub elapsed_seconds: f64,
    pub version: &'static str,
}

impl RunManifest {
    pub fn lines(&self) -> Vec<String> {
        vec![
            format!("# impneg {}", self.version),
            format!("# scenario: {}", self.scenario.name()),
            format!("# config: {}", self.config_path.as_deref().unwrap_or("-")),
            format!("# output: {}", self.output_path.as_deref().unwrap_or("-")),
            format!("# started_unix: {}", self.started_unix),
            format!("# elapsed_seconds: {:.3}", self.elapsed_seconds),
        ]
    }
}

/// `{:.11e}`: 12 significant digits in scientific notation.
pub fn format_value(x: f64) -> String {
    format!("{x:.11e}")
}

pub fn render_csv(result: &ScenarioResult, manifest: Option<&RunManifest>) -> String {
    let mut out = String::new();
    for line in manifest.map(RunManifest::lines).unwrap_or_default() {
        out.push_str(&line);
        out.push('\n');
    }
    out.push_str(CONFIG_BEGIN);
    out.push('\n');
    for line in echo_config(&result.config).lines() {
        out.push_str(if line.is_empty() { "#" } else { "# " });
        out.push_str(line);
        out.push('\n');
    }
    out.push_str(CONFIG_END);
    out.push('\n');
    out.push_str(&result.headers().join(","));
    out.push('\n');
    for row in &result.rows {
        let fields: Vec<String> = std::iter::once(row.x)
            .chain(row.negativities.iter().copied())
            .chain(row.diagnostics.iter().copied())
            .map(format_value)
            .collect();
        out.push_str(&fields.join(","));
        out.push('\n');
    }
    out
}

pub fn emit_csv(result: &ScenarioResult, manifest: Option<&RunManifest>, mut destination: impl Write) -> Result<()> {
    destination.write_all(render_csv(result, manifest).as_bytes())?;
    destination.flush()?;
    Ok(())
}

pub fn write_csv_file(result: &ScenarioResult, manifest: Option<&RunManifest>, path: &Path) -> Result<()> {
    let file = std::fs::File::create(path).map_err(|e| {
        Error::Io(std::io::Error::new(
            e.kind(),
            format!("cannot create output file {}: {e}", path.display()),
        ))
    })?;
    emit_csv(result, manifest, std::io::BufWriter::new(file))
}

/// A parsed CSV file produced by [`render_csv`].
#[derive(Clone, Debug, PartialEq)]
pub struct CsvTable {
    pub header: Vec<String>,
    pub rows: Vec<Vec<f64>>,
    /// The embedded config, with the comment prefix removed.
    pub config: String,
}

impl CsvTable {
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let j = self.header.iter().position(|h| h == name)?;
        Some(self.rows.iter().map(|r| r[j]).collect())
    }
}

pub fn parse_csv(text: &str) -> Result<CsvTable> {
    let mut config = String::new();
    let mut in_config = false;
    let mut header = None;
    let mut rows = Vec::new();
    for (n, line) in text.lines().enumerate() {
        if line == CONFIG_BEGIN {
            in_config = true;
        } else if line == CONFIG_END {
            in_config = false;
        } else if let Some(comment) = line.strip_prefix('#') {
            if in_config {
                config.push_str(comment.strip_prefix(' ').unwrap_or(comment));
                config.push('\n');
            }
        } else if header.is_none() {
            header = Some(line.split(',').map(str::to_string).collect::<Vec<_>>());
        } else {
            let row = line
                .split(',')
                .map(|f| f.parse::<f64>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|e| Error::config(format!("line {}", n + 1), e.to_string()))?;
            rows.push(row);
        }
    }
    let header = header.ok_or_else(|| Error::config("<csv>", "missing header row"))?;
    if let Some(i) = rows.iter().position(|r| r.len() != header.len()) {
        return Err(Error::config(format!("row {i}"), "field count differs from header"));
    }
    Ok(CsvTable { header, rows, config })
}
