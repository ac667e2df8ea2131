//! Shared generators and brute-force oracles. Nothing here goes through the
//! step-function or piecewise-linear machinery of the crate.
#![allow(dead_code)]

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use taco_core::{ChannelSpec, OperationRecord, RegistrationEvent};

pub const DATA: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/data");

/// Impulses of an operation in cost units: inputs as positive magnitudes.
#[derive(Clone, Debug)]
pub struct RandomOp {
    pub inputs: Vec<(f64, f64)>,
    pub outputs: Vec<(f64, f64)>,
}

impl RandomOp {
    /// Unit-cost record with one channel per role.
    pub fn record(&self) -> OperationRecord {
        self.record_with_costs(1.0, 1.0)
    }

    pub fn record_with_costs(&self, cost_in: f64, cost_out: f64) -> OperationRecord {
        let events = self
            .inputs
            .iter()
            .map(|&(t, q)| RegistrationEvent::new(t, "in", q))
            .chain(self.outputs.iter().map(|&(t, q)| RegistrationEvent::new(t, "out", q)))
            .collect();
        OperationRecord::new(
            vec![
                ChannelSpec::input("in", cost_in),
                ChannelSpec::output("out", cost_out),
            ],
            events,
        )
        .unwrap()
    }

    pub fn re_total(&self) -> f64 {
        self.inputs.iter().map(|i| i.1).sum()
    }

    pub fn pe_total(&self) -> f64 {
        self.outputs.iter().map(|i| i.1).sum()
    }

    pub fn last_time(&self) -> f64 {
        self.inputs
            .iter()
            .chain(&self.outputs)
            .map(|i| i.0)
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// `vpe(t) - vre(t)` by direct ramp sums.
    pub fn gap(&self, t: f64) -> f64 {
        let ramp = |xs: &[(f64, f64)]| xs.iter().map(|&(ti, a)| a * (t - ti).max(0.0)).sum::<f64>();
        ramp(&self.outputs) - ramp(&self.inputs)
    }

    /// Centroid formula evaluated by plain summation.
    pub fn centroid_formula(&self) -> f64 {
        let m = |xs: &[(f64, f64)]| xs.iter().map(|&(t, a)| a * t).sum::<f64>();
        (m(&self.outputs) - m(&self.inputs)) / (self.pe_total() - self.re_total())
    }
}

/// 2 to 20 impulses with at least one per role, times in [0, 100] and
/// amounts in (0, 10].
pub fn random_op(rng: &mut ChaCha8Rng) -> RandomOp {
    let n = rng.gen_range(2..=20);
    let n_in = rng.gen_range(1..n);
    let mut draw = |k: usize| -> Vec<(f64, f64)> {
        (0..k)
            .map(|_| (rng.gen_range(0.0..=100.0), 10.0 - rng.gen_range(0.0..10.0)))
            .collect()
    };
    let inputs = draw(n_in);
    let outputs = draw(n - n_in);
    RandomOp { inputs, outputs }
}

pub fn random_effective_op(rng: &mut ChaCha8Rng) -> RandomOp {
    loop {
        let op = random_op(rng);
        if op.pe_total() > op.re_total() {
            return op;
        }
    }
}

/// First upward crossing of `gap` at or after `t_f`, found by scanning with
/// step `h` and bisecting the bracketing interval. Returns `t_f` when the
/// gap never drops below zero after `t_f`.
pub fn brute_force_crossing(op: &RandomOp, t_f: f64, h: f64) -> f64 {
    let last = op.last_time();
    let mut t = t_f;
    let mut prev = op.gap(t);
    if prev == 0.0 {
        return t;
    }
    loop {
        if prev > 0.0 && t > last {
            // Linear and increasing from here on.
            return t_f;
        }
        let next = t + h;
        let dn = op.gap(next);
        if prev < 0.0 && dn >= 0.0 {
            let (mut lo, mut hi) = (t, next);
            for _ in 0..80 {
                let mid = 0.5 * (lo + hi);
                if op.gap(mid) < 0.0 {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            return hi;
        }
        t = next;
        prev = dn;
    }
}
