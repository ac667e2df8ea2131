//! Time boundaries of a target operation.
//!
//! Physical completion comes from the reserve thread. Actual completion is
//! the moment the output integral catches up with the input integral; it is
//! found numerically by intersecting the integral functions segment by
//! segment, and analytically as the cost-weighted difference of centroids.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{exact, to_f64, Exact};
use crate::signal::{reserve_impulses, ImpulseTrain, OperationRecord};
use crate::thread::{cumulate, integrate_from_origin, OperationThreads, PiecewiseLinear};

/// Relative tolerance used for the numeric/analytic agreement flag.
pub const AGREEMENT_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OperationBounds {
    pub t_s: f64,
    pub t_f: f64,
    /// Whether the internal reserve returned exactly to zero at `t_f`.
    pub reserve_closed: bool,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TacoResult {
    pub t_a_numeric: Option<f64>,
    pub t_a_analytic: Option<f64>,
    pub effective: bool,
    pub agreement: bool,
}

/// Linear replacements `vre*`, `vpe*` of the integral functions of a
/// reduced operation, anchored at the actual completion time.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LinearizedPair {
    pub slope_r: f64,
    pub slope_p: f64,
    /// Common displacement: the value both integral functions share at `t_a`.
    pub c: f64,
    pub c_r: f64,
    pub c_p: f64,
    /// Time-axis crossing of `vre*`.
    pub t_r: f64,
    /// Time-axis crossing of `vpe*`.
    pub t_p: f64,
}

impl LinearizedPair {
    pub fn vre_star(&self, t: f64) -> f64 {
        self.slope_r * t - self.c_r + self.c
    }

    pub fn vpe_star(&self, t: f64) -> f64 {
        self.slope_p * t - self.c_p + self.c
    }

    /// Completion time recovered from the two axis crossings.
    pub fn completion_from_crossings(&self) -> f64 {
        let (sr, sp) = (exact(self.slope_r), exact(self.slope_p));
        to_f64(&((&sp * exact(self.t_p) - &sr * exact(self.t_r)) / (sp - sr)))
    }
}

pub fn start_time(record: &OperationRecord) -> Result<f64> {
    record
        .events
        .iter()
        .map(|e| e.time)
        .min_by(f64::total_cmp)
        .ok_or(Error::EmptyOperation)
}

fn latest_event(record: &OperationRecord) -> Result<f64> {
    record
        .events
        .iter()
        .map(|e| e.time)
        .max_by(f64::total_cmp)
        .ok_or(Error::EmptyOperation)
}

/// Start and physical completion. When quantities are conserved the
/// operation completes at the last change of the reserve thread; otherwise
/// at the latest registration.
pub fn physical_completion(record: &OperationRecord) -> Result<OperationBounds> {
    let t_s = start_time(record)?;
    let icq = cumulate(&reserve_impulses(record));
    let reserve_closed = icq.final_level().is_zero();
    let t_f = match icq.breakpoints().last() {
        Some((t, _)) if reserve_closed => *t,
        _ => latest_event(record)?,
    };
    Ok(OperationBounds {
        t_s,
        t_f,
        reserve_closed,
    })
}

fn non_effective(re: &Exact, pe: &Exact) -> Error {
    Error::NonEffectiveOperation {
        re: to_f64(re),
        pe: to_f64(pe),
    }
}

/// Earliest `t >= t_f` where `upper` meets `lower` from below, solved exactly
/// on the merged segments and on the extrapolated tails.
///
/// Works on either route: `(vre, vpe)` or `(vbe, vde)`. If `upper` stays
/// ahead of `lower` from `t_f` on, compensation happened no later than
/// physical completion and `t_f` is returned.
pub fn taco_numeric(lower: &PiecewiseLinear, upper: &PiecewiseLinear, t_f: f64) -> Result<f64> {
    let tail = upper.tail_slope() - lower.tail_slope();
    if !tail.is_positive() {
        return Err(non_effective(lower.tail_slope(), upper.tail_slope()));
    }

    let mut points: Vec<f64> = lower
        .times()
        .chain(upper.times())
        .filter(|&t| t > t_f)
        .collect();
    points.push(t_f);
    points.sort_by(f64::total_cmp);
    points.dedup();

    let gap = |t: f64| upper.eval_exact(t) - lower.eval_exact(t);
    for (k, &x) in points.iter().enumerate() {
        let d = gap(x);
        let slope = upper.slope_after(x) - lower.slope_after(x);
        if d.is_zero() {
            if !slope.is_negative() {
                return Ok(x);
            }
            continue;
        }
        if d.is_negative() && slope.is_positive() {
            let crossing: Exact = exact(x) - d / slope;
            match points.get(k + 1) {
                Some(&next) if crossing >= exact(next) => continue,
                _ => return Ok(to_f64(&crossing)),
            }
        }
    }
    // No upward crossing: `upper` stays ahead from t_f on.
    debug_assert!(gap(t_f).is_positive());
    Ok(t_f)
}

/// Discrete general formula:
/// `(Σ pe_j·t_j − Σ |re_i|·t_i) / (Σ pe_j − Σ |re_i|)`.
pub fn taco_analytic(re: &ImpulseTrain, pe: &ImpulseTrain) -> Result<f64> {
    let (re_total, pe_total) = (re.magnitude_exact(), pe.magnitude_exact());
    let denominator = &pe_total - &re_total;
    if !denominator.is_positive() {
        return Err(non_effective(&re_total, &pe_total));
    }
    Ok(to_f64(
        &((pe.moment_exact() - re.moment_exact()) / denominator),
    ))
}

/// Closed form for one input of cost `re` at `t_r` and one output of cost
/// `pe` at `t_p`.
pub fn taco_reduced(re: f64, t_r: f64, pe: f64, t_p: f64) -> Result<f64> {
    if [re, t_r, pe, t_p].iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFiniteValue {
            what: "reduced operation".into(),
        });
    }
    let (re, pe) = (exact(re.abs()), exact(pe));
    if pe <= re {
        return Err(non_effective(&re, &pe));
    }
    Ok(to_f64(
        &((&pe * exact(t_p) - &re * exact(t_r)) / (&pe - &re)),
    ))
}

/// Replaces the integral functions of a reduced operation by the linear
/// functions through their common value at `t_a`.
pub fn linearize(re: &ImpulseTrain, pe: &ImpulseTrain, t_a: f64) -> Result<LinearizedPair> {
    if re.len() != 1 || pe.len() != 1 {
        return Err(Error::NotReducedOperation {
            inputs: re.len(),
            outputs: pe.len(),
        });
    }
    let slope_r = re.magnitude_exact();
    let slope_p = pe.magnitude_exact();
    if slope_p <= slope_r {
        return Err(non_effective(&slope_r, &slope_p));
    }
    if !t_a.is_finite() {
        return Err(Error::NonFiniteValue {
            what: "completion time".into(),
        });
    }

    let vre = integrate_from_origin(&cumulate(re), true);
    let c = vre.eval_exact(t_a);
    let ta = exact(t_a);
    let c_r = &slope_r * &ta;
    let c_p = &slope_p * &ta;
    let t_r = (&c_r - &c) / &slope_r;
    let t_p = (&c_p - &c) / &slope_p;
    Ok(LinearizedPair {
        slope_r: to_f64(&slope_r),
        slope_p: to_f64(&slope_p),
        c: to_f64(&c),
        c_r: to_f64(&c_r),
        c_p: to_f64(&c_p),
        t_r: to_f64(&t_r),
        t_p: to_f64(&t_p),
    })
}

/// Runs both determinations of the actual completion time. The numeric one
/// intersects the tight-resource and target integral functions.
pub fn completion(
    re: &ImpulseTrain,
    pe: &ImpulseTrain,
    threads: &OperationThreads,
    t_f: f64,
) -> TacoResult {
    let effective = pe.magnitude_exact() > re.magnitude_exact();
    if !effective {
        return TacoResult {
            t_a_numeric: None,
            t_a_analytic: None,
            effective,
            agreement: false,
        };
    }
    let numeric = taco_numeric(&threads.vbe, &threads.vde, t_f).ok();
    let analytic = taco_analytic(re, pe).ok();
    let agreement = match (numeric, analytic) {
        (Some(n), Some(a)) => (n - a).abs() <= AGREEMENT_TOLERANCE * (1.0 + a.abs()),
        _ => false,
    };
    TacoResult {
        t_a_numeric: numeric,
        t_a_analytic: analytic,
        effective,
        agreement,
    }
}
