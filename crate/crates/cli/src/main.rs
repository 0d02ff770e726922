use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use colordist::SolverParams;
use colordist_cli::bench::{instance_name, load_instance, run_bench, run_one};
use colordist_cli::output::{emit_runs, emit_stats};
use colordist_cli::{aggregate, parse_assignment, parse_bench_spec, validate_assignment, Format, ModeSpec};

/// Graph coloring by distribution evolution.
///
/// Exit status: 0 when the result is legal, 2 when the budget ran out
/// without a legal coloring, 1 on usage, input or parameter errors.
#[derive(Parser)]
#[command(name = "colordist", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Search for a legal coloring with a fixed number of colors.
    SolveK {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        instance: PathBuf,
        #[command(flatten)]
        solver: SolverArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Search for the smallest number of colors.
    Chromatic {
        #[arg(long)]
        instance: PathBuf,
        #[command(flatten)]
        solver: SolverArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run every group of a bench spec and write aggregate statistics.
    Bench {
        #[arg(long)]
        spec: PathBuf,
        /// Worker threads; 1 is the deterministic reference mode.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Also write every individual run here.
        #[arg(long)]
        runs_out: Option<PathBuf>,
        #[command(flatten)]
        solver: SolverArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Check a coloring file (one 1-based color per line) against an instance.
    Validate {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        assignment: PathBuf,
        /// Largest allowed color.
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct SolverArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Wall-clock budget per run, seconds.
    #[arg(long, default_value_t = 3600.0)]
    time_budget: f64,
    #[arg(long)]
    np: Option<usize>,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    iter_max: Option<usize>,
    #[arg(long)]
    p0: Option<f64>,
    #[arg(long)]
    dtheta: Option<f64>,
    #[arg(long)]
    lambda: Option<f64>,
    #[arg(long)]
    pc: Option<f64>,
    /// Comma-separated sampling probabilities.
    #[arg(long, value_delimiter = ',')]
    r_choices: Option<Vec<f64>>,
    #[arg(long)]
    max_inner_gens: Option<u64>,
    #[arg(long)]
    tenure_base: Option<usize>,
    #[arg(long)]
    tenure_slope: Option<f64>,
    /// Chromatic mode stops as soon as this many colors suffice.
    #[arg(long)]
    target_k: Option<usize>,
    /// Disable orthogonal exploration.
    #[arg(long)]
    no_explore: bool,
    /// Disable the exploitation update (every column is disturbed).
    #[arg(long)]
    no_exploit: bool,
}

impl SolverArgs {
    fn params(&self) -> Result<SolverParams> {
        let d = SolverParams::default();
        let p = SolverParams {
            np: self.np.unwrap_or(d.np),
            alpha: self.alpha.unwrap_or(d.alpha),
            iter_max: self.iter_max.unwrap_or(d.iter_max),
            p0: self.p0.unwrap_or(d.p0),
            dtheta: self.dtheta.unwrap_or(d.dtheta),
            lambda: self.lambda.unwrap_or(d.lambda),
            r_choices: self.r_choices.clone().unwrap_or(d.r_choices),
            pc: self.pc.unwrap_or(d.pc),
            tenure_base: self.tenure_base.unwrap_or(d.tenure_base),
            tenure_slope: self.tenure_slope.unwrap_or(d.tenure_slope),
            time_budget: Some(self.time_budget),
            max_inner_generations: self.max_inner_gens,
            seed: self.seed,
            target_k: self.target_k,
            explore: !self.no_explore,
            exploit: !self.no_exploit,
        };
        p.validate()?;
        Ok(p)
    }
}

#[derive(Args)]
struct OutputArgs {
    /// Result file; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

fn write_out(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn solve(instance: &Path, mode: ModeSpec, solver: &SolverArgs, output: &OutputArgs) -> Result<bool> {
    let params = solver.params()?;
    let g = load_instance(instance)?;
    let r = run_one(&g, &instance_name(instance), mode, &params)?;
    eprintln!("{}: k={} conflicts={} legal={} time={:.3}s", r.instance, r.k, r.conflicts, r.legal, r.time_s);
    write_out(output.out.as_deref(), &emit_runs(std::slice::from_ref(&r), output.format))?;
    Ok(r.legal)
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::SolveK { k, instance, solver, output } => {
            if k == 0 {
                bail!("--k must be at least 1");
            }
            solve(&instance, ModeSpec::K(k), &solver, &output)
        }
        Command::Chromatic { instance, solver, output } => solve(&instance, ModeSpec::Chromatic, &solver, &output),
        Command::Bench { spec, jobs, runs_out, solver, output } => {
            let text = std::fs::read_to_string(&spec).with_context(|| format!("reading {}", spec.display()))?;
            let base_dir = spec.parent().unwrap_or(Path::new("."));
            let spec = parse_bench_spec(&text, base_dir)?;
            let groups = run_bench(&spec, &solver.params()?, jobs)?;
            let mut stats = Vec::with_capacity(groups.len());
            let mut all_runs = Vec::new();
            for group in &groups {
                let s = aggregate(&group.results, group.params.time_budget)?;
                eprintln!("{} {}: SR {} mean time {:?}", s.instance, s.mode, s.sr, s.time_mean);
                stats.push(s);
                all_runs.extend(group.results.iter().cloned());
            }
            if let Some(path) = runs_out {
                write_out(Some(&path), &emit_runs(&all_runs, output.format))?;
            }
            write_out(output.out.as_deref(), &emit_stats(&stats, output.format))?;
            Ok(all_runs.iter().all(|r| r.legal))
        }
        Command::Validate { instance, assignment, k, out } => {
            let g = load_instance(&instance)?;
            let text =
                std::fs::read_to_string(&assignment).with_context(|| format!("reading {}", assignment.display()))?;
            let report = validate_assignment(&g, &parse_assignment(&text)?, k)?;
            write_out(out.as_deref(), &(serde_json::to_string_pretty(&report)? + "\n"))?;
            Ok(report.legal)
        }
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// process exit status.
fn execute<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    match run(cli) {
        Ok(true) => 0,
        Ok(false) => 2,
        Err(e) => {
            eprintln!("error: {e:#}");
            1
        }
    }
}

fn main() -> ExitCode {
    ExitCode::from(execute(std::env::args_os()))
}
