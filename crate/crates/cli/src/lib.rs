//! Benchmark harness around the `colordist` solver: bench spec files,
//! multi-seed orchestration, aggregate statistics, result files and
//! assignment validation.

pub mod aggregate;
pub mod bench;
pub mod output;
pub mod validate;

pub use aggregate::{aggregate, AggregateError, AggregateStats};
pub use bench::{parse_bench_spec, run_bench, run_one, BenchEntry, BenchSpec, ModeSpec, SpecError};
pub use output::Format;
pub use validate::{parse_assignment, validate_assignment, AssignmentError, ValidationReport};
