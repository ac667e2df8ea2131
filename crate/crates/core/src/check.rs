//! Invariant checks on a single analysed operation, used by `taco check`.

use num_traits::{Signed, Zero};

use crate::completion::{taco_numeric, AGREEMENT_TOLERANCE};
use crate::exact::{to_f64, zero, Exact};
use crate::indicators::Analysis;

#[derive(Clone, Debug, PartialEq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl CheckOutcome {
    fn new(name: &'static str, passed: bool, detail: impl Into<String>) -> Self {
        CheckOutcome {
            name,
            passed,
            detail: detail.into(),
        }
    }
}

/// Breakpoints of the single-threaded model, midpoints between them and
/// one point on either side.
fn probe_times(times: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(times.len() * 2 + 2);
    if let (Some(first), Some(last)) = (times.first(), times.last()) {
        out.push(first - 1.0);
        out.push(last + 1.0);
    } else {
        out.push(0.0);
    }
    out.extend_from_slice(times);
    out.extend(times.windows(2).map(|w| w[0] + (w[1] - w[0]) / 2.0));
    out
}

fn decomposition(a: &Analysis) -> CheckOutcome {
    let th = &a.threads;
    let times: Vec<f64> = th.ice.times().collect();
    let probes = probe_times(&times);
    let bad = probes.iter().find(|&&t| {
        let (ice, ibe, ide) = (th.ice.level_exact(t), th.ibe.level_exact(t), th.ide.level_exact(t));
        ibe + ide != *ice || ibe.is_positive() || ide.is_negative() || !(ibe * ide).is_zero()
    });
    match bad {
        None => CheckOutcome::new(
            "decomposition identity",
            true,
            format!("ibe + ide = ice at {} points", probes.len()),
        ),
        Some(t) => CheckOutcome::new("decomposition identity", false, format!("violated at t={t}")),
    }
}

fn thread_routes(a: &Analysis) -> CheckOutcome {
    let th = &a.threads;
    let mut max_gap = zero();
    let mut max_mag = zero();
    for t in th.knot_times() {
        let via_split = th.vde.eval_exact(t) - th.vbe.eval_exact(t);
        let via_inputs = th.vpe.eval_exact(t) - th.vre.eval_exact(t);
        let gap: Exact = (&via_split - &via_inputs).abs();
        if gap > max_gap {
            max_gap = gap;
        }
        for v in [&th.vre, &th.vpe, &th.vbe, &th.vde] {
            let m = v.eval_exact(t).abs();
            if m > max_mag {
                max_mag = m;
            }
        }
    }
    let (gap, mag) = (to_f64(&max_gap), to_f64(&max_mag));
    CheckOutcome::new(
        "thread-route identity",
        gap <= 1e-9 * (1.0 + mag),
        format!("max |(vde - vbe) - (vpe - vre)| = {gap}"),
    )
}

fn agreement(a: &Analysis) -> CheckOutcome {
    const NAME: &str = "numeric/analytic agreement";
    if !a.taco.effective {
        return CheckOutcome::new(NAME, true, "not applicable: operation is not effective");
    }
    let th = &a.threads;
    let t_f = a.bounds.t_f;
    let (Ok(split), Ok(direct)) = (
        taco_numeric(&th.vbe, &th.vde, t_f),
        taco_numeric(&th.vre, &th.vpe, t_f),
    ) else {
        return CheckOutcome::new(NAME, false, "numeric determination failed");
    };
    if split != direct {
        return CheckOutcome::new(
            NAME,
            false,
            format!("routes disagree: vbe/vde gives {split}, vre/vpe gives {direct}"),
        );
    }
    let analytic = a.taco.t_a_analytic.unwrap_or(f64::NAN);
    let last_event = a
        .re
        .impulses()
        .iter()
        .chain(a.pe.impulses())
        .map(|i| i.time)
        .fold(f64::NEG_INFINITY, f64::max);
    if split < last_event || analytic < t_f {
        return CheckOutcome::new(
            NAME,
            true,
            format!(
                "not applicable: crossing {split} precedes the last registration or the analytic value {analytic} precedes t_f"
            ),
        );
    }
    let diff = (split - analytic).abs();
    CheckOutcome::new(
        NAME,
        diff <= AGREEMENT_TOLERANCE * (1.0 + analytic.abs()),
        format!("numeric {split}, analytic {analytic}"),
    )
}

fn monotone(a: &Analysis) -> CheckOutcome {
    let th = &a.threads;
    let ok = [&th.vre, &th.vpe, &th.vbe, &th.vde]
        .iter()
        .all(|v| v.is_nondecreasing());
    CheckOutcome::new("integral monotonicity", ok, "vre, vpe, vbe, vde nondecreasing")
}

pub fn run_checks(analysis: &Analysis) -> Vec<CheckOutcome> {
    vec![
        decomposition(analysis),
        thread_routes(analysis),
        agreement(analysis),
        monotone(analysis),
    ]
}
