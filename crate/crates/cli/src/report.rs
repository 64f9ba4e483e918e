//! CSV and JSON rendering for metric reports and tabular exports.

use std::path::Path;

use dnacrypt::metrics::{MetricReport, CSV_HEADER};
use serde::Serialize;

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    /// JSON for a `.json` extension, CSV otherwise.
    pub fn for_path(path: &Path) -> Format {
        match path.extension().and_then(|e| e.to_str()) {
            Some(e) if e.eq_ignore_ascii_case("json") => Format::Json,
            _ => Format::Csv,
        }
    }
}

fn csv_err(e: csv::Error) -> CliError {
    CliError::Other(format!("csv: {e}"))
}

fn json<T: Serialize + ?Sized>(value: &T) -> CliResult<Vec<u8>> {
    let mut out = serde_json::to_vec_pretty(value).map_err(|e| CliError::Other(format!("json: {e}")))?;
    out.push(b'\n');
    Ok(out)
}

pub fn render_metrics(reports: &[MetricReport], format: Format) -> CliResult<Vec<u8>> {
    match format {
        Format::Json => json(reports),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(CSV_HEADER).map_err(csv_err)?;
            for r in reports {
                for row in r.csv_rows() {
                    w.write_record(&row).map_err(csv_err)?;
                }
            }
            w.into_inner().map_err(|e| CliError::Other(format!("csv: {e}")))
        }
    }
}

/// Serializable rows (bench table, histogram, scatter) in either format.
pub fn render_rows<T: Serialize>(rows: &[T], format: Format) -> CliResult<Vec<u8>> {
    match format {
        Format::Json => json(rows),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for row in rows {
                w.serialize(row).map_err(csv_err)?;
            }
            w.into_inner().map_err(|e| CliError::Other(format!("csv: {e}")))
        }
    }
}
