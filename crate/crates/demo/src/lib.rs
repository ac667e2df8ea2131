//! WebAssembly bindings for the static demo page in `www/`.
//!
//! Every export takes and returns plain strings and numbers; structured
//! results travel as JSON text, errors as `{"error": <name>, "message": ...}`.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use taco_core::indicators::analyze;
use taco_core::io::{parse_events, parse_manifest, plot_series, report_to_json};
use taco_core::{linearize, taco_analytic, taco_numeric, Error, ImpulseTrain, OperationThreads};

const SAMPLES: usize = 240;

fn error_json(e: &Error) -> String {
    json!({ "error": e.name(), "message": e.to_string() }).to_string()
}

fn sample_times(start: f64, end: f64, extra: &[f64]) -> Vec<f64> {
    let step = (end - start) / SAMPLES as f64;
    let mut times: Vec<f64> = (0..=SAMPLES).map(|k| start + k as f64 * step).collect();
    times.extend(extra.iter().filter(|t| (start..=end).contains(*t)));
    times.sort_by(f64::total_cmp);
    times.dedup();
    times
}

fn reduced(re: f64, t_r: f64, pe: f64, t_p: f64) -> Result<Value, Error> {
    let re_train = ImpulseTrain::new([(t_r, -re.abs())])?;
    let pe_train = ImpulseTrain::new([(t_p, pe)])?;
    let th = OperationThreads::build(&re_train, &pe_train);
    let t_f = t_r.max(t_p);

    let effective = pe > re.abs();
    let (t_a, lin) = if effective {
        let numeric = taco_numeric(&th.vbe, &th.vde, t_f)?;
        let analytic = taco_analytic(&re_train, &pe_train)?;
        let lin = if re != 0.0 && pe != 0.0 {
            Some(linearize(&re_train, &pe_train, analytic)?)
        } else {
            None
        };
        (Some((numeric, analytic)), lin)
    } else {
        (None, None)
    };

    let start = th.origin.min(t_r).min(t_p);
    let horizon = t_a.map_or(t_f, |(n, _)| n).max(t_f);
    let end = horizon + 0.25 * (horizon - start).max(1.0);
    let mut extra = vec![t_r, t_p];
    extra.extend(t_a.map(|(n, _)| n));
    let times = sample_times(start, end, &extra);

    let series = |f: &dyn Fn(f64) -> f64| times.iter().map(|&t| f(t)).collect::<Vec<f64>>();
    let mut curves = json!({
        "t": times,
        "vre": series(&|t| th.vre.eval(t)),
        "vpe": series(&|t| th.vpe.eval(t)),
        "vbe": series(&|t| th.vbe.eval(t)),
        "vde": series(&|t| th.vde.eval(t)),
        "ice": series(&|t| th.ice.level(t)),
    });
    if let Some(lp) = &lin {
        curves["vre_star"] = json!(series(&|t| lp.vre_star(t)));
        curves["vpe_star"] = json!(series(&|t| lp.vpe_star(t)));
    }
    Ok(json!({
        "effective": effective,
        "t_f": t_f,
        "t_a_numeric": t_a.map(|(n, _)| n),
        "t_a_analytic": t_a.map(|(_, a)| a),
        "linearized": lin.map(|lp| json!({
            "c": lp.c, "c_r": lp.c_r, "c_p": lp.c_p, "t_r": lp.t_r, "t_p": lp.t_p,
        })),
        "curves": curves,
    }))
}

/// Integral functions and completion times of a reduced operation: one
/// input of cost `re` at `t_r` and one output of cost `pe` at `t_p`.
#[wasm_bindgen]
pub fn reduced_operation(re: f64, t_r: f64, pe: f64, t_p: f64) -> String {
    match reduced(re, t_r, pe, t_p) {
        Ok(v) => v.to_string(),
        Err(e) => error_json(&e),
    }
}

/// Indicator report (JSON) for an events CSV and a JSON manifest.
#[wasm_bindgen]
pub fn analyze_log(events_csv: &str, manifest_json: &str) -> String {
    let run = || -> Result<String, Error> {
        let manifest = parse_manifest(manifest_json)?;
        let record = parse_events(events_csv, &manifest)?;
        Ok(report_to_json(&analyze(&record)?.report))
    };
    run().unwrap_or_else(|e| error_json(&e))
}

/// Plot series CSV for an events CSV and a JSON manifest. A `sample_dt`
/// of zero or less samples at breakpoints only.
#[wasm_bindgen]
pub fn plot_log(events_csv: &str, manifest_json: &str, sample_dt: f64) -> String {
    let run = || -> Result<String, Error> {
        let manifest = parse_manifest(manifest_json)?;
        let record = parse_events(events_csv, &manifest)?;
        let analysis = analyze(&record)?;
        let dt = (sample_dt > 0.0).then_some(sample_dt);
        Ok(plot_series(&analysis, dt)?.to_csv())
    };
    run().unwrap_or_else(|e| error_json(&e))
}
