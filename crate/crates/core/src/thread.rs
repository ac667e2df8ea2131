//! Cumulative threads and their integral functions.
//!
//! Threads are right-continuous step functions obtained by cumulating
//! impulse trains. Integrating a thread gives a continuous piecewise-linear
//! function whose knots sit at the thread's breakpoints. Levels and knot
//! values are held as exact rationals; breakpoint times are the input times.

use num_traits::{Signed, Zero};

use crate::exact::{exact, to_f64, zero, Exact};
use crate::signal::ImpulseTrain;

/// Right-continuous piecewise-constant function of time.
///
/// Canonical: breakpoint times strictly increase and every breakpoint
/// changes the level, so structural equality is functional equality.
#[derive(Clone, Debug, PartialEq)]
pub struct StepFunction {
    initial: Exact,
    steps: Vec<(f64, Exact)>,
}

impl StepFunction {
    pub fn constant(level: Exact) -> Self {
        StepFunction {
            initial: level,
            steps: Vec::new(),
        }
    }

    pub fn zero() -> Self {
        Self::constant(zero())
    }

    /// Builds a canonical step function from `(time, new_level)` pairs.
    /// Times must be non-decreasing; a repeated time keeps the later level.
    pub fn from_steps(initial: Exact, steps: impl IntoIterator<Item = (f64, Exact)>) -> Self {
        let mut out: Vec<(f64, Exact)> = Vec::new();
        for (t, level) in steps {
            if let Some(last) = out.last_mut() {
                debug_assert!(last.0 <= t, "breakpoints out of order");
                if last.0 == t {
                    last.1 = level;
                    continue;
                }
            }
            out.push((t, level));
        }
        // Coalesce equal neighbours.
        let mut steps: Vec<(f64, Exact)> = Vec::with_capacity(out.len());
        for (t, level) in out {
            let prev = steps.last().map(|s| &s.1).unwrap_or(&initial);
            if *prev != level {
                steps.push((t, level));
            }
        }
        StepFunction { initial, steps }
    }

    pub fn initial_level(&self) -> &Exact {
        &self.initial
    }

    pub fn breakpoints(&self) -> &[(f64, Exact)] {
        &self.steps
    }

    pub fn times(&self) -> impl Iterator<Item = f64> + '_ {
        self.steps.iter().map(|s| s.0)
    }

    pub fn final_level(&self) -> &Exact {
        self.steps.last().map(|s| &s.1).unwrap_or(&self.initial)
    }

    pub fn level_exact(&self, t: f64) -> &Exact {
        let idx = self.steps.partition_point(|s| s.0 <= t);
        if idx == 0 {
            &self.initial
        } else {
            &self.steps[idx - 1].1
        }
    }

    /// Level just before `t` (the left limit).
    pub fn level_before(&self, t: f64) -> &Exact {
        let idx = self.steps.partition_point(|s| s.0 < t);
        if idx == 0 {
            &self.initial
        } else {
            &self.steps[idx - 1].1
        }
    }

    pub fn level(&self, t: f64) -> f64 {
        to_f64(self.level_exact(t))
    }

    pub fn map(&self, f: impl Fn(&Exact) -> Exact) -> Self {
        StepFunction::from_steps(
            f(&self.initial),
            self.steps.iter().map(|(t, l)| (*t, f(l))),
        )
    }
}

/// Continuous piecewise-linear function, extended linearly on both sides.
#[derive(Clone, Debug, PartialEq)]
pub struct PiecewiseLinear {
    knots: Vec<(f64, Exact)>,
    // slopes[0] applies before the first knot, slopes[k] between knots k-1
    // and k, and slopes[len] after the last knot.
    slopes: Vec<Exact>,
}

impl PiecewiseLinear {
    /// Interpolates the given knots; the first and last segments are
    /// extended. Returns `None` on an empty list, non-finite values or
    /// non-increasing times.
    pub fn from_knots(knots: &[(f64, f64)]) -> Option<Self> {
        if knots.is_empty()
            || knots.iter().any(|(t, v)| !t.is_finite() || !v.is_finite())
            || knots.windows(2).any(|w| w[0].0 >= w[1].0)
        {
            return None;
        }
        let knots: Vec<(f64, Exact)> = knots.iter().map(|&(t, v)| (t, exact(v))).collect();
        let mut inner: Vec<Exact> = knots
            .windows(2)
            .map(|w| (&w[1].1 - &w[0].1) / (exact(w[1].0) - exact(w[0].0)))
            .collect();
        let lead = inner.first().cloned().unwrap_or_else(zero);
        let tail = inner.last().cloned().unwrap_or_else(zero);
        let mut slopes = vec![lead];
        slopes.append(&mut inner);
        slopes.push(tail);
        Some(PiecewiseLinear { knots, slopes })
    }

    pub fn knots(&self) -> &[(f64, Exact)] {
        &self.knots
    }

    pub fn times(&self) -> impl Iterator<Item = f64> + '_ {
        self.knots.iter().map(|k| k.0)
    }

    pub fn lead_slope(&self) -> &Exact {
        &self.slopes[0]
    }

    pub fn tail_slope(&self) -> &Exact {
        &self.slopes[self.knots.len()]
    }

    /// Slope of the piece that starts at or contains `t` (the right derivative).
    pub fn slope_after(&self, t: f64) -> &Exact {
        &self.slopes[self.knots.partition_point(|k| k.0 <= t)]
    }

    pub fn eval_exact(&self, t: f64) -> Exact {
        let idx = self.knots.partition_point(|k| k.0 <= t);
        let (t0, v0) = if idx == 0 {
            &self.knots[0]
        } else {
            &self.knots[idx - 1]
        };
        if *t0 == t {
            return v0.clone();
        }
        v0 + &self.slopes[idx] * (exact(t) - exact(*t0))
    }

    pub fn eval(&self, t: f64) -> f64 {
        to_f64(&self.eval_exact(t))
    }

    pub fn is_nondecreasing(&self) -> bool {
        self.slopes.iter().all(|s| !s.is_negative())
    }
}

/// Running sum of a train: jumps by each impulse's amount at its time.
pub fn cumulate(train: &ImpulseTrain) -> StepFunction {
    let mut level = zero();
    let steps: Vec<(f64, Exact)> = train
        .impulses()
        .iter()
        .map(|i| {
            level += exact(i.amount);
            (i.time, level.clone())
        })
        .collect();
    StepFunction::from_steps(zero(), steps)
}

fn merged_times<'a>(fs: impl IntoIterator<Item = &'a StepFunction>) -> Vec<f64> {
    let mut times: Vec<f64> = fs.into_iter().flat_map(|f| f.times()).collect();
    times.sort_by(f64::total_cmp);
    times.dedup();
    times
}

/// Pointwise sum.
pub fn add(a: &StepFunction, b: &StepFunction) -> StepFunction {
    let steps = merged_times([a, b])
        .into_iter()
        .map(|t| (t, a.level_exact(t) + b.level_exact(t)));
    StepFunction::from_steps(a.initial_level() + b.initial_level(), steps)
}

/// Splits the single-threaded model into its non-positive part (the
/// tight-resource thread) and its non-negative part (the target thread).
pub fn split_signs(ice: &StepFunction) -> (StepFunction, StepFunction) {
    let negative = ice.map(|l| if l.is_negative() { l.clone() } else { zero() });
    let positive = ice.map(|l| if l.is_positive() { l.clone() } else { zero() });
    (negative, positive)
}

/// Default lower integration bound: `min(0, first breakpoint)`.
pub fn default_origin(f: &StepFunction) -> f64 {
    f.times().next().map_or(0.0, |t| t.min(0.0))
}

/// Exact running integral of `f` (or `|f|` when `absolute`) starting from
/// zero at `from`. Knots are placed at `from` and every later breakpoint.
pub fn integrate(f: &StepFunction, absolute: bool, from: f64) -> PiecewiseLinear {
    let norm = |l: &Exact| if absolute { l.abs() } else { l.clone() };

    let mut knots = vec![(from, zero())];
    let mut slopes = vec![norm(f.level_before(from)), norm(f.level_exact(from))];
    let mut value = zero();
    let mut prev = from;
    for (t, level) in f.breakpoints().iter().filter(|s| s.0 > from) {
        value += slopes.last().unwrap() * (exact(*t) - exact(prev));
        knots.push((*t, value.clone()));
        slopes.push(norm(level));
        prev = *t;
    }
    PiecewiseLinear { knots, slopes }
}

/// [`integrate`] from the default origin.
pub fn integrate_from_origin(f: &StepFunction, absolute: bool) -> PiecewiseLinear {
    integrate(f, absolute, default_origin(f))
}

/// True when every level of `f` is zero.
pub fn is_identically_zero(f: &StepFunction) -> bool {
    f.initial_level().is_zero() && f.breakpoints().is_empty()
}

/// Every thread and integral function of an operation, integrated from a
/// common origin so the two routes can be compared knot by knot.
#[derive(Clone, Debug)]
pub struct OperationThreads {
    pub origin: f64,
    pub ire: StepFunction,
    pub ipe: StepFunction,
    pub ice: StepFunction,
    pub ibe: StepFunction,
    pub ide: StepFunction,
    pub vre: PiecewiseLinear,
    pub vpe: PiecewiseLinear,
    pub vbe: PiecewiseLinear,
    pub vde: PiecewiseLinear,
}

impl OperationThreads {
    pub fn build(re: &ImpulseTrain, pe: &ImpulseTrain) -> Self {
        let ire = cumulate(re);
        let ipe = cumulate(pe);
        let ice = add(&ire, &ipe);
        let (ibe, ide) = split_signs(&ice);
        let origin = default_origin(&ire).min(default_origin(&ipe));
        OperationThreads {
            origin,
            vre: integrate(&ire, true, origin),
            vpe: integrate(&ipe, false, origin),
            vbe: integrate(&ibe, true, origin),
            vde: integrate(&ide, false, origin),
            ire,
            ipe,
            ice,
            ibe,
            ide,
        }
    }

    /// Union of the knot times of all four integral functions.
    pub fn knot_times(&self) -> Vec<f64> {
        let mut times: Vec<f64> = [&self.vre, &self.vpe, &self.vbe, &self.vde]
            .into_iter()
            .flat_map(|v| v.times())
            .collect();
        times.sort_by(f64::total_cmp);
        times.dedup();
        times
    }
}
