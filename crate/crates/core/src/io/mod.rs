//! File formats: JSON manifests, event and gridded CSV logs, JSON reports
//! and plot-ready CSV series.

pub mod events;
pub mod manifest;
pub mod plot;
pub mod report;

use std::path::Path;

use crate::error::{Error, Result};

pub use events::{events_to_csv, load_events, load_gridded, parse_events, parse_gridded, write_events};
pub use manifest::{load_manifest, parse_manifest, Manifest};
pub use plot::{plot_series, write_plot, PlotRow, PlotSeries};
pub use report::{report_to_json, write_report};

pub(crate) fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::io(path, e))
}

pub(crate) fn write_file(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).map_err(|e| Error::io(path, e))
}

/// Shortest round-trip decimal; never prints `-0`.
pub fn format_number(x: f64) -> String {
    if x == 0.0 {
        "0".to_string()
    } else {
        format!("{x}")
    }
}
