use std::path::Path;

use crate::error::{Error, Result};
use crate::exact::{exact, to_f64, zero};
use crate::indicators::Analysis;
use crate::signal::ImpulseTrain;

use super::{format_number, write_file};

pub const PLOT_HEADER: &str = "t,re,pe,ire,ipe,ice,ibe,ide,vre,vpe,vbe,vde";

/// Upper bound on rows produced by a uniform sampling grid.
const MAX_GRID_ROWS: f64 = 1_000_000.0;

#[derive(Clone, Debug, PartialEq)]
pub struct PlotRow {
    pub t: f64,
    /// Impulses registered in `(previous t, t]`.
    pub re: f64,
    pub pe: f64,
    pub ire: f64,
    pub ipe: f64,
    pub ice: f64,
    pub ibe: f64,
    pub ide: f64,
    pub vre: f64,
    pub vpe: f64,
    pub vbe: f64,
    pub vde: f64,
}

impl PlotRow {
    fn values(&self) -> [f64; 12] {
        [
            self.t, self.re, self.pe, self.ire, self.ipe, self.ice, self.ibe, self.ide, self.vre,
            self.vpe, self.vbe, self.vde,
        ]
    }
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct PlotSeries {
    pub rows: Vec<PlotRow>,
}

impl PlotSeries {
    pub fn to_csv(&self) -> String {
        let mut out = String::from(PLOT_HEADER);
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.values().iter().map(|&x| format_number(x)).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    pub fn row_at(&self, t: f64) -> Option<&PlotRow> {
        self.rows.iter().find(|r| r.t == t)
    }
}

fn window_sum(train: &ImpulseTrain, after: Option<f64>, upto: f64) -> f64 {
    let sum = train
        .impulses()
        .iter()
        .filter(|i| i.time <= upto && after.is_none_or(|a| i.time > a))
        .fold(zero(), |acc, i| acc + exact(i.amount));
    to_f64(&sum)
}

/// Samples every thread and integral function at all breakpoints, the
/// characteristic times (t_s, t_f, both t_a) and, when `sample_dt` is
/// given, on a uniform grid from the integration origin.
pub fn plot_series(analysis: &Analysis, sample_dt: Option<f64>) -> Result<PlotSeries> {
    let th = &analysis.threads;
    let mut times = th.knot_times();
    times.extend([analysis.bounds.t_s, analysis.bounds.t_f]);
    times.extend(analysis.taco.t_a_numeric);
    times.extend(analysis.taco.t_a_analytic);
    times.retain(|t| t.is_finite());
    times.sort_by(f64::total_cmp);

    if let Some(dt) = sample_dt {
        let (start, end) = (th.origin, *times.last().unwrap_or(&th.origin));
        if !(dt.is_finite() && dt > 0.0) || (end - start) / dt > MAX_GRID_ROWS {
            return Err(Error::Parse {
                line: None,
                message: format!("sample step {dt} must be positive and yield at most {MAX_GRID_ROWS} rows"),
            });
        }
        let n = ((end - start) / dt).floor() as u64;
        times.extend((0..=n).map(|k| start + k as f64 * dt));
        times.sort_by(f64::total_cmp);
    }
    times.dedup();

    let mut prev = None;
    let rows = times
        .into_iter()
        .map(|t| {
            let row = PlotRow {
                t,
                re: window_sum(&analysis.re, prev, t),
                pe: window_sum(&analysis.pe, prev, t),
                ire: th.ire.level(t),
                ipe: th.ipe.level(t),
                ice: th.ice.level(t),
                ibe: th.ibe.level(t),
                ide: th.ide.level(t),
                vre: th.vre.eval(t),
                vpe: th.vpe.eval(t),
                vbe: th.vbe.eval(t),
                vde: th.vde.eval(t),
            };
            prev = Some(t);
            row
        })
        .collect();
    Ok(PlotSeries { rows })
}

pub fn write_plot(series: &PlotSeries, path: impl AsRef<Path>) -> Result<()> {
    write_file(path.as_ref(), &series.to_csv())
}
