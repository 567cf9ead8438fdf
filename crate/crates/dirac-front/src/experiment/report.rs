//! Result-file emission with stable byte-level formatting.
//!
//! CSV bytes are a pure function of the run configuration: floats are
//! printed with 17 significant digits (round-trip exact), `-0.0` is
//! normalized, and row order is fixed.  The manifest additionally carries
//! the wall clock, which is why reproducibility is promised for the CSVs
//! and not for `manifest.json`.

use std::fs;
use std::path::Path;

use serde::Serialize;
use serde_json::json;

use crate::border::{BorderTrace, CheckEntry, ShellTable, TentFit};
use crate::entire::EfsincReport;
use crate::error::Result;

/// `{:.16e}` prints 17 significant digits, enough to round-trip any f64.
pub fn fmt_float(x: f64) -> String {
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.16e}")
}

/// Write a CSV file: header row, comma separator, `\n` line ends.
pub fn write_csv(path: &Path, header: &[&str], rows: &[Vec<String>]) -> Result<()> {
    let mut text = String::with_capacity(64 * (rows.len() + 1));
    text.push_str(&header.join(","));
    text.push('\n');
    for row in rows {
        debug_assert_eq!(row.len(), header.len());
        text.push_str(&row.join(","));
        text.push('\n');
    }
    fs::write(path, text)?;
    Ok(())
}

/// One row per (direction, time) sample, directions in measurement order.
pub fn write_trace_csv(dir: &Path, traces: &[BorderTrace]) -> Result<()> {
    let mut rows = Vec::new();
    for trace in traces {
        for &(t, border) in &trace.samples {
            rows.push(vec![
                fmt_float(t),
                fmt_float(border),
                fmt_float(trace.direction[0]),
                fmt_float(trace.direction[1]),
                fmt_float(trace.direction[2]),
            ]);
        }
    }
    write_csv(&dir.join("trace.csv"), &["t", "border", "e1", "e2", "e3"], &rows)
}

pub fn write_shell_csv(dir: &Path, table: &ShellTable) -> Result<()> {
    let rows: Vec<Vec<String>> = table
        .rows
        .iter()
        .map(|r| vec![fmt_float(r.t), fmt_float(r.inner), fmt_float(r.outer)])
        .collect();
    write_csv(&dir.join("shell.csv"), &["t", "inner_mass", "outer_mass"], &rows)
}

pub fn write_efsinc_csv(dir: &Path, report: &EfsincReport) -> Result<()> {
    let rows: Vec<Vec<String>> = report
        .rows
        .iter()
        .map(|r| {
            vec![
                fmt_float(r.u),
                fmt_float(r.v),
                fmt_float(r.lower),
                fmt_float(r.value),
                fmt_float(r.upper),
            ]
        })
        .collect();
    write_csv(
        &dir.join("efsinc.csv"),
        &["u", "v", "log_lower", "log_value", "log_upper"],
        &rows,
    )
}

/// `(r, estimate)` rows; multi-direction experiments append one block per
/// direction in declaration order.
pub fn write_indicator_csv(dir: &Path, rows: &[(f64, f64)]) -> Result<()> {
    let rows: Vec<Vec<String>> = rows
        .iter()
        .map(|&(r, est)| vec![fmt_float(r), fmt_float(est)])
        .collect();
    write_csv(&dir.join("indicator.csv"), &["r", "estimate"], &rows)
}

fn write_pretty_json(path: &Path, value: &serde_json::Value) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    fs::write(path, text)?;
    Ok(())
}

/// Tent-fit summary; `free_slopes`, when present, is the diagnostic fit
/// with both slopes unconstrained.
pub fn write_tent_json(
    dir: &Path,
    filename: &str,
    fit: &TentFit,
    free: Option<&TentFit>,
) -> Result<()> {
    let mut doc = json!({
        "t_e": fit.t_e,
        "apex": fit.apex,
        "slope_pre": fit.slope_pre,
        "slope_post": fit.slope_post,
        "residual": fit.residual_rms,
    });
    if let Some(f) = free {
        doc["free_slopes"] = json!({
            "t_e": f.t_e,
            "apex": f.apex,
            "slope_pre": f.slope_pre,
            "slope_post": f.slope_post,
            "residual": f.residual_rms,
        });
    }
    write_pretty_json(&dir.join(filename), &doc)
}

/// Summary of a run: configuration echo, per-check outcomes, and timing.
/// Feeding this file back to `run` reproduces the CSVs byte for byte.
#[derive(Clone, Debug, Serialize)]
pub struct RunManifest {
    pub tool_version: String,
    pub experiment: String,
    pub passed: bool,
    pub violations: usize,
    /// Smallest check margin; negative means at least one violation.
    pub worst_margin: f64,
    pub wall_clock_seconds: f64,
    pub checks: Vec<CheckEntry>,
    pub notes: Vec<String>,
    /// Per-experiment extras (fits, extrapolations, search maxima).
    pub details: serde_json::Value,
    pub config: serde_json::Value,
}

pub fn write_manifest(dir: &Path, manifest: &RunManifest) -> Result<()> {
    write_pretty_json(&dir.join("manifest.json"), &serde_json::to_value(manifest)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_formatting_is_17_significant_digits() {
        assert_eq!(fmt_float(0.1), "1.0000000000000001e-1");
        assert_eq!(fmt_float(1.0), "1.0000000000000000e0");
        assert_eq!(fmt_float(-0.0), "0.0000000000000000e0");
        let tricky = 0.1 + 0.2;
        let parsed: f64 = fmt_float(tricky)
            .parse()
            .expect("formatted floats parse back");
        assert_eq!(parsed, tricky);
    }

    #[test]
    fn csv_layout_is_header_plus_rows() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("x.csv");
        write_csv(
            &path,
            &["a", "b"],
            &[vec!["1".into(), "2".into()], vec!["3".into(), "4".into()]],
        )
        .unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        assert_eq!(text, "a,b\n1,2\n3,4\n");
    }
}
