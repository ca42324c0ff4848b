//! Deterministic rendering: 12-significant-digit text, CSV with mandatory
//! headers, and JSON with a fixed field order.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use anyhow::Context;
use serde::Serialize;

use crate::failure::Failure;

/// Format a value with 12 significant digits in fixed-point notation.
/// Non-finite values render as "n/a" (JSON reports carry them as null).
pub fn sig12(x: f64) -> String {
    if !x.is_finite() {
        return "n/a".into();
    }
    if x == 0.0 {
        return "0.00000000000".into();
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = usize::try_from((11 - magnitude).max(0)).unwrap();
    format!("{x:.decimals$}")
}

fn push_line(widths: &[usize], cells: &[String], out: &mut String) {
    let mut line = String::new();
    for (i, (cell, width)) in cells.iter().zip(widths).enumerate() {
        if i > 0 {
            line.push_str("  ");
        }
        line.push_str(&format!("{cell:<width$}", width = *width));
    }
    out.push_str(line.trim_end());
    out.push('\n');
}

/// Render rows as aligned columns under a header and a rule line.
pub fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let header_cells: Vec<String> = header.iter().map(|s| s.to_string()).collect();
    let rule: Vec<String> = widths.iter().map(|w| "-".repeat(*w)).collect();
    let mut out = String::new();
    push_line(&widths, &header_cells, &mut out);
    push_line(&widths, &rule, &mut out);
    for row in rows {
        push_line(&widths, row, &mut out);
    }
    out
}

/// Render rows as CSV with a mandatory header record.
pub fn csv(header: &[&str], rows: &[Vec<String>]) -> Result<String, Failure> {
    let build = || -> anyhow::Result<String> {
        let mut writer = csv::Writer::from_writer(Vec::new());
        writer.write_record(header)?;
        for row in rows {
            writer.write_record(row)?;
        }
        let bytes = writer.into_inner().context("flushing csv output")?;
        String::from_utf8(bytes).context("csv output is not utf-8")
    };
    build().map_err(|err| Failure::Config(format!("{err:#}")))
}

/// Render a serializable report as pretty JSON with a trailing newline.
pub fn json<T: Serialize>(report: &T) -> Result<String, Failure> {
    serde_json::to_string_pretty(report)
        .map(|mut text| {
            text.push('\n');
            text
        })
        .map_err(|err| Failure::Config(format!("serializing report: {err}")))
}

/// Write a finished report to the requested sink.
pub fn emit(output: Option<&PathBuf>, content: &str) -> Result<(), Failure> {
    let sink = || -> anyhow::Result<()> {
        match output {
            Some(path) => fs::write(path, content)
                .with_context(|| format!("writing report to {}", path.display()))?,
            None => std::io::stdout()
                .write_all(content.as_bytes())
                .context("writing report to standard output")?,
        }
        Ok(())
    };
    sink().map_err(|err| Failure::Config(format!("{err:#}")))
}
