use std::path::Path;

use serde::Serializer;

use crate::error::Result;
use crate::indicators::IndicatorReport;

use super::write_file;

// Integral values are written without a fractional part so that a
// completion time of twenty prints as `20`, not `20.0`.
const MAX_EXACT_INT: f64 = 9_007_199_254_740_992.0;

pub(crate) fn number<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    if x.fract() == 0.0 && x.abs() < MAX_EXACT_INT {
        s.serialize_i64(*x as i64)
    } else {
        s.serialize_f64(*x)
    }
}

pub(crate) fn optional_number<S: Serializer>(x: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
    match x {
        Some(x) => number(x, s),
        None => s.serialize_none(),
    }
}

/// Pretty-printed JSON object with a trailing newline. Absent optional
/// fields are omitted.
pub fn report_to_json(report: &IndicatorReport) -> String {
    serde_json::to_string_pretty(report).expect("report serializes") + "\n"
}

pub fn write_report(report: &IndicatorReport, path: impl AsRef<Path>) -> Result<()> {
    write_file(path.as_ref(), &report_to_json(report))
}
