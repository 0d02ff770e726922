//! Per-instance summary of a group of runs.

use colordist::{Mode, RunResult};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Success rate, runtime and color-count statistics of one run group.
///
/// Time statistics cover successful runs only; `time_mean_all` also counts
/// every failed run at the full budget. Standard deviations are reported
/// with both the population (`_pop`, N) and sample (`_sample`, N-1)
/// denominators. Color-count statistics cover all runs and are only
/// present in chromatic mode.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AggregateStats {
    pub instance: String,
    pub mode: Mode,
    /// Requested color count in k-coloring mode.
    pub k: Option<usize>,
    pub runs: usize,
    pub successes: usize,
    pub sr: String,
    pub time_mean: Option<f64>,
    pub time_min: Option<f64>,
    pub time_max: Option<f64>,
    pub time_std_pop: Option<f64>,
    pub time_std_sample: Option<f64>,
    pub time_mean_all: f64,
    pub k_ave: Option<f64>,
    pub k_min: Option<usize>,
    pub k_max: Option<usize>,
    pub k_std_pop: Option<f64>,
    pub k_std_sample: Option<f64>,
}

#[derive(Debug, Error, PartialEq)]
pub enum AggregateError {
    #[error("no runs to aggregate")]
    Empty,
    #[error("runs mix instances or modes: {first} vs {other}")]
    Mixed { first: String, other: String },
}

struct Summary {
    mean: f64,
    min: f64,
    max: f64,
    std_pop: f64,
    std_sample: Option<f64>,
}

fn summarize(xs: &[f64]) -> Option<Summary> {
    if xs.is_empty() {
        return None;
    }
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let ss: f64 = xs.iter().map(|x| (x - mean).powi(2)).sum();
    Some(Summary {
        mean,
        min: xs.iter().copied().fold(f64::INFINITY, f64::min),
        max: xs.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        std_pop: (ss / n).sqrt(),
        std_sample: (xs.len() > 1).then(|| (ss / (n - 1.0)).sqrt()),
    })
}

/// Summarizes runs of one instance and mode. `budget` is the time charged
/// to a failed run in `time_mean_all`; without it the run's own time is used.
pub fn aggregate(results: &[RunResult], budget: Option<f64>) -> Result<AggregateStats, AggregateError> {
    let first = results.first().ok_or(AggregateError::Empty)?;
    let key = |r: &RunResult| match r.mode {
        Mode::KColoring => format!("{} k={}", r.instance, r.k),
        Mode::Chromatic => format!("{} chromatic", r.instance),
    };
    if let Some(other) = results
        .iter()
        .find(|r| r.instance != first.instance || r.mode != first.mode || (r.mode == Mode::KColoring && r.k != first.k))
    {
        return Err(AggregateError::Mixed { first: key(first), other: key(other) });
    }

    let runs = results.len();
    let success_times: Vec<f64> = results.iter().filter(|r| r.legal).map(|r| r.time_s).collect();
    let successes = success_times.len();
    let charged: Vec<f64> =
        results.iter().map(|r| if r.legal { r.time_s } else { budget.unwrap_or(r.time_s) }).collect();
    let time = summarize(&success_times);

    let chromatic = first.mode == Mode::Chromatic;
    let ks: Vec<f64> = results.iter().map(|r| r.k as f64).collect();
    let kstat = if chromatic { summarize(&ks) } else { None };

    Ok(AggregateStats {
        instance: first.instance.clone(),
        mode: first.mode,
        k: (!chromatic).then_some(first.k),
        runs,
        successes,
        sr: format!("{successes}/{runs}"),
        time_mean: time.as_ref().map(|s| s.mean),
        time_min: time.as_ref().map(|s| s.min),
        time_max: time.as_ref().map(|s| s.max),
        time_std_pop: time.as_ref().map(|s| s.std_pop),
        time_std_sample: time.as_ref().and_then(|s| s.std_sample),
        time_mean_all: charged.iter().sum::<f64>() / runs as f64,
        k_ave: kstat.as_ref().map(|s| s.mean),
        k_min: kstat.as_ref().map(|s| s.min as usize),
        k_max: kstat.as_ref().map(|s| s.max as usize),
        k_std_pop: kstat.as_ref().map(|s| s.std_pop),
        k_std_sample: kstat.as_ref().and_then(|s| s.std_sample),
    })
}
