//! Bench spec files and run orchestration.
//!
//! A spec is line oriented. Each run group is one line
//!
//! ```text
//! instance <path> mode <k|chromatic> runs <count>
//! ```
//!
//! and a few optional settings apply to every group:
//!
//! ```text
//! time-budget <seconds>
//! seed <base seed>
//! set <param> <value>
//! ```
//!
//! `#` starts a comment. Run `i` of a group uses seed `base + i`.

use std::path::{Path, PathBuf};

use colordist::{ContractError, Graph, ParseError, RunResult, Solver64, SolverParams};
use rayon::prelude::*;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModeSpec {
    K(usize),
    Chromatic,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchEntry {
    pub instance: PathBuf,
    pub mode: ModeSpec,
    pub runs: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchSpec {
    pub entries: Vec<BenchEntry>,
    pub time_budget: Option<f64>,
    pub base_seed: Option<u64>,
    /// `(name, value)` overrides applied on top of the caller's parameters.
    pub overrides: Vec<(String, String)>,
}

#[derive(Debug, Error)]
pub enum SpecError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("instance {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("instance {path}: {source}")]
    Parse { path: PathBuf, source: ParseError },
    #[error("unknown parameter `{0}`")]
    UnknownParameter(String),
    #[error("parameter `{name}`: cannot parse `{value}`")]
    BadValue { name: String, value: String },
    #[error(transparent)]
    Contract(#[from] ContractError),
}

/// Parses a spec. Relative instance paths are resolved against `base_dir`.
pub fn parse_bench_spec(text: &str, base_dir: &Path) -> Result<BenchSpec, SpecError> {
    let mut spec = BenchSpec { entries: Vec::new(), time_budget: None, base_seed: None, overrides: Vec::new() };
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let syntax = |message: &str| SpecError::Syntax { line, message: message.to_string() };
        let words: Vec<&str> = content.split_whitespace().collect();
        match words[0] {
            "instance" => {
                let [_, path, "mode", mode, "runs", runs] = words[..] else {
                    return Err(syntax("expected `instance <path> mode <k|chromatic> runs <count>`"));
                };
                let mode = match mode {
                    "chromatic" => ModeSpec::Chromatic,
                    k => match k.parse::<usize>() {
                        Ok(k) if k >= 1 => ModeSpec::K(k),
                        _ => return Err(syntax("mode must be a positive color count or `chromatic`")),
                    },
                };
                let runs = match runs.parse::<usize>() {
                    Ok(r) if r >= 1 => r,
                    _ => return Err(syntax("runs must be a positive integer")),
                };
                spec.entries.push(BenchEntry { instance: base_dir.join(path), mode, runs });
            }
            "time-budget" => {
                let [_, secs] = words[..] else { return Err(syntax("expected `time-budget <seconds>`")) };
                let secs: f64 = secs.parse().map_err(|_| syntax("time budget must be a number"))?;
                if !(secs >= 0.0) {
                    return Err(syntax("time budget must be non-negative"));
                }
                spec.time_budget = Some(secs);
            }
            "seed" => {
                let [_, seed] = words[..] else { return Err(syntax("expected `seed <u64>`")) };
                spec.base_seed = Some(seed.parse().map_err(|_| syntax("seed must be an unsigned integer"))?);
            }
            "set" => {
                let [_, name, value] = words[..] else { return Err(syntax("expected `set <param> <value>`")) };
                spec.overrides.push((name.to_string(), value.to_string()));
            }
            _ => return Err(syntax("unknown directive")),
        }
    }
    if spec.entries.is_empty() {
        return Err(SpecError::Syntax { line: 0, message: "no instance lines".into() });
    }
    Ok(spec)
}

/// Applies one named override to `params`.
pub fn apply_override(params: &mut SolverParams, name: &str, value: &str) -> Result<(), SpecError> {
    fn num<T: std::str::FromStr>(name: &str, value: &str) -> Result<T, SpecError> {
        value.parse().map_err(|_| SpecError::BadValue { name: name.into(), value: value.into() })
    }
    match name {
        "np" => params.np = num(name, value)?,
        "alpha" => params.alpha = num(name, value)?,
        "iter-max" | "iter_max" => params.iter_max = num(name, value)?,
        "p0" => params.p0 = num(name, value)?,
        "dtheta" => params.dtheta = num(name, value)?,
        "lambda" => params.lambda = num(name, value)?,
        "pc" => params.pc = num(name, value)?,
        "r-choices" | "r_choices" => {
            params.r_choices = value.split(',').map(|v| num(name, v.trim())).collect::<Result<_, _>>()?
        }
        "tenure-base" | "tenure_base" => params.tenure_base = num(name, value)?,
        "tenure-slope" | "tenure_slope" => params.tenure_slope = num(name, value)?,
        "max-inner-gens" | "max_inner_generations" => params.max_inner_generations = Some(num(name, value)?),
        "target-k" | "target_k" => params.target_k = Some(num(name, value)?),
        _ => return Err(SpecError::UnknownParameter(name.to_string())),
    }
    Ok(())
}

pub fn instance_name(path: &Path) -> String {
    path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| path.display().to_string())
}

pub fn load_instance(path: &Path) -> Result<Graph, SpecError> {
    Graph::read_dimacs(path)
        .map_err(|source| SpecError::Io { path: path.to_path_buf(), source })?
        .map_err(|source| SpecError::Parse { path: path.to_path_buf(), source })
}

/// One solver run with the given parameters.
pub fn run_one(g: &Graph, name: &str, mode: ModeSpec, params: &SolverParams) -> Result<RunResult, ContractError> {
    let mut solver = Solver64::new(params.clone())?;
    match mode {
        ModeSpec::K(k) => solver.solve_k(g, k, name),
        ModeSpec::Chromatic => solver.solve_chromatic(g, name),
    }
}

/// Results of one spec line, in seed order.
#[derive(Debug, Clone)]
pub struct EntryResults {
    pub entry: BenchEntry,
    pub params: SolverParams,
    pub results: Vec<RunResult>,
}

/// Runs every group of `spec`. Run `i` uses seed `base + i`, where the
/// spec's seed wins over `params.seed`. With `jobs > 1` runs are spread
/// over a thread pool; results are identical to the sequential order.
pub fn run_bench(spec: &BenchSpec, params: &SolverParams, jobs: usize) -> Result<Vec<EntryResults>, SpecError> {
    let mut base = params.clone();
    if let Some(t) = spec.time_budget {
        base.time_budget = Some(t);
    }
    if let Some(s) = spec.base_seed {
        base.seed = s;
    }
    for (name, value) in &spec.overrides {
        apply_override(&mut base, name, value)?;
    }
    base.validate()?;

    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build().expect("thread pool construction");
    let mut out = Vec::with_capacity(spec.entries.len());
    for entry in &spec.entries {
        let g = load_instance(&entry.instance)?;
        let name = instance_name(&entry.instance);
        let run = |i: usize| {
            let p = SolverParams { seed: base.seed.wrapping_add(i as u64), ..base.clone() };
            run_one(&g, &name, entry.mode, &p)
        };
        let results: Result<Vec<RunResult>, ContractError> = if jobs <= 1 {
            (0..entry.runs).map(run).collect()
        } else {
            pool.install(|| (0..entry.runs).into_par_iter().map(run).collect())
        };
        out.push(EntryResults { entry: entry.clone(), params: base.clone(), results: results? });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_groups_and_settings() {
        let text = "# demo\ntime-budget 12.5\nseed 7\nset np 10\ninstance a.col mode 17 runs 10\ninstance b.col mode chromatic runs 2 # tail\n";
        let spec = parse_bench_spec(text, Path::new("/data")).unwrap();
        assert_eq!(spec.time_budget, Some(12.5));
        assert_eq!(spec.base_seed, Some(7));
        assert_eq!(spec.overrides, vec![("np".to_string(), "10".to_string())]);
        assert_eq!(
            spec.entries,
            vec![
                BenchEntry { instance: "/data/a.col".into(), mode: ModeSpec::K(17), runs: 10 },
                BenchEntry { instance: "/data/b.col".into(), mode: ModeSpec::Chromatic, runs: 2 },
            ]
        );
    }

    #[test]
    fn rejects_bad_lines() {
        for text in [
            "instance a.col mode 0 runs 1",
            "instance a.col mode 3 runs 0",
            "instance a.col runs 1",
            "frobnicate",
            "time-budget -1\ninstance a mode 3 runs 1",
            "",
        ] {
            assert!(parse_bench_spec(text, Path::new(".")).is_err(), "{text:?}");
        }
    }

    #[test]
    fn overrides() {
        let mut p = SolverParams::default();
        apply_override(&mut p, "r-choices", "0.1, 0.9").unwrap();
        apply_override(&mut p, "iter-max", "100").unwrap();
        assert_eq!(p.r_choices, vec![0.1, 0.9]);
        assert_eq!(p.iter_max, 100);
        assert!(apply_override(&mut p, "bogus", "1").is_err());
        assert!(apply_override(&mut p, "np", "x").is_err());
    }
}
