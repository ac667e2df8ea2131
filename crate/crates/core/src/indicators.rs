//! Basic indicators of a target operation and the full analysis pipeline.

use serde::Serialize;

use crate::completion::{completion, physical_completion, OperationBounds, TacoResult};
use crate::error::{Error, Result};
use crate::exact::to_f64;
use crate::io::report::{number, optional_number};
use crate::signal::{cost_impulses, ImpulseTrain, OperationRecord};
use crate::thread::OperationThreads;

/// Total input cost, `RE`.
pub fn economic_cost(re: &ImpulseTrain) -> f64 {
    to_f64(&re.magnitude_exact())
}

/// Total output cost, `PE`.
pub fn economic_income(pe: &ImpulseTrain) -> f64 {
    pe.total()
}

/// The indicator set; field names are the JSON keys of the report.
#[allow(non_snake_case)]
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IndicatorReport {
    #[serde(serialize_with = "number")]
    pub RE: f64,
    #[serde(serialize_with = "number")]
    pub PE: f64,
    #[serde(serialize_with = "number")]
    pub added_value: f64,
    #[serde(
        serialize_with = "optional_number",
        skip_serializing_if = "Option::is_none"
    )]
    pub conditional_return: Option<f64>,
    #[serde(serialize_with = "number")]
    pub T_op: f64,
    #[serde(serialize_with = "number")]
    pub t_s: f64,
    #[serde(serialize_with = "number")]
    pub t_f: f64,
    #[serde(
        serialize_with = "optional_number",
        skip_serializing_if = "Option::is_none"
    )]
    pub t_a_numeric: Option<f64>,
    #[serde(
        serialize_with = "optional_number",
        skip_serializing_if = "Option::is_none"
    )]
    pub t_a_analytic: Option<f64>,
    pub effective: bool,
    pub reserve_closed: bool,
}

/// Everything derived from one operation record.
#[derive(Clone, Debug)]
pub struct Analysis {
    pub re: ImpulseTrain,
    pub pe: ImpulseTrain,
    pub threads: OperationThreads,
    pub bounds: OperationBounds,
    pub taco: TacoResult,
    pub report: IndicatorReport,
}

pub fn analyze(record: &OperationRecord) -> Result<Analysis> {
    if record.is_empty() {
        return Err(Error::EmptyOperation);
    }
    let (re, pe) = cost_impulses(record);
    let threads = OperationThreads::build(&re, &pe);
    let bounds = physical_completion(record)?;
    let taco = completion(&re, &pe, &threads, bounds.t_f);

    let re_total = economic_cost(&re);
    let pe_total = economic_income(&pe);
    let added_value = pe_total - re_total;
    let report = IndicatorReport {
        RE: re_total,
        PE: pe_total,
        added_value,
        conditional_return: (re_total > 0.0).then(|| added_value / re_total),
        T_op: bounds.t_f - bounds.t_s,
        t_s: bounds.t_s,
        t_f: bounds.t_f,
        t_a_numeric: taco.t_a_numeric,
        t_a_analytic: taco.t_a_analytic,
        effective: taco.effective,
        reserve_closed: bounds.reserve_closed,
    };
    Ok(Analysis {
        re,
        pe,
        threads,
        bounds,
        taco,
        report,
    })
}

pub fn assemble_report(record: &OperationRecord) -> Result<IndicatorReport> {
    analyze(record).map(|a| a.report)
}
