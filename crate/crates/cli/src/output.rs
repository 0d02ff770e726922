//! Result files.
//!
//! Run results are written as JSON (one object per line) or CSV with the
//! header `instance,mode,k,conflicts,legal,time_s,seed`. Aggregate
//! statistics are written as a JSON array or CSV with one row per group.

use colordist::{Mode, RunResult};
use serde::{Deserialize, Serialize};

use crate::aggregate::AggregateStats;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Serialize, Deserialize, PartialEq)]
struct RunRow {
    instance: String,
    mode: Mode,
    k: usize,
    conflicts: usize,
    legal: bool,
    time_s: f64,
    seed: u64,
}

impl From<&RunResult> for RunRow {
    fn from(r: &RunResult) -> Self {
        Self {
            instance: r.instance.clone(),
            mode: r.mode,
            k: r.k,
            conflicts: r.conflicts,
            legal: r.legal,
            time_s: r.time_s,
            seed: r.seed,
        }
    }
}

fn csv_string<S: Serialize>(rows: impl IntoIterator<Item = S>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.serialize(row).expect("in-memory csv write");
    }
    String::from_utf8(w.into_inner().expect("in-memory csv flush")).expect("csv output is utf-8")
}

pub fn emit_runs(results: &[RunResult], format: Format) -> String {
    match format {
        Format::Json => {
            let mut out = String::new();
            for r in results {
                out.push_str(&serde_json::to_string(r).expect("run result serializes"));
                out.push('\n');
            }
            out
        }
        Format::Csv => {
            if results.is_empty() {
                return "instance,mode,k,conflicts,legal,time_s,seed\n".to_string();
            }
            csv_string(results.iter().map(RunRow::from))
        }
    }
}

/// Reads JSON run results written by [`emit_runs`].
pub fn parse_runs_json(text: &str) -> serde_json::Result<Vec<RunResult>> {
    text.lines().filter(|l| !l.trim().is_empty()).map(serde_json::from_str).collect()
}

pub fn emit_stats(stats: &[AggregateStats], format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(stats).expect("stats serialize") + "\n",
        Format::Csv => csv_string(stats),
    }
}

#[derive(Debug, thiserror::Error)]
pub enum ReadError {
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub fn parse_stats(text: &str, format: Format) -> Result<Vec<AggregateStats>, ReadError> {
    Ok(match format {
        Format::Json => serde_json::from_str(text)?,
        Format::Csv => csv::Reader::from_reader(text.as_bytes()).deserialize().collect::<Result<_, _>>()?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(seed: u64, legal: bool) -> RunResult {
        RunResult {
            instance: "toy".into(),
            mode: Mode::KColoring,
            k: 3,
            conflicts: if legal { 0 } else { 2 },
            legal,
            time_s: 0.1 * seed as f64,
            inner_generations: 4,
            outer_generations: 1,
            seed,
            assignment: vec![1, 2, 3],
        }
    }

    #[test]
    fn csv_header_and_rows() {
        let text = emit_runs(&[run(1, true), run(2, false)], Format::Csv);
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("instance,mode,k,conflicts,legal,time_s,seed"));
        assert_eq!(lines.next(), Some("toy,k-coloring,3,0,true,0.1,1"));
        assert_eq!(lines.next(), Some("toy,k-coloring,3,2,false,0.2,2"));
    }

    #[test]
    fn json_runs_round_trip() {
        let runs = vec![run(1, true), run(7, false)];
        assert_eq!(parse_runs_json(&emit_runs(&runs, Format::Json)).unwrap(), runs);
        let obj: serde_json::Value = serde_json::from_str(emit_runs(&runs[..1], Format::Json).trim()).unwrap();
        let mut keys: Vec<&str> = obj.as_object().unwrap().keys().map(String::as_str).collect();
        keys.sort_unstable();
        let mut expected = [
            "instance",
            "mode",
            "k",
            "conflicts",
            "legal",
            "time_s",
            "inner_generations",
            "outer_generations",
            "seed",
            "assignment",
        ];
        expected.sort_unstable();
        assert_eq!(keys, expected);
    }
}
