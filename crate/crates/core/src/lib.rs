//! Graph coloring by co-evolving a population of per-vertex color
//! distributions with a population of color assignments.
//!
//! The crate covers both the k-coloring problem (find a conflict-free
//! assignment with a fixed number of colors) and the chromatic-number
//! problem (descend from `max_degree + 1` colors until the search fails).
//!
//! Numeric code in [`distribution`] is generic over a [`Scalar`]
//! (`f32` or `f64`); the aliases below fix the solver to `f64`, which is
//! what the unit-norm tolerances are calibrated for.
//!
//! Colors are zero-based in memory and one-based in every file format.

pub mod coloring;
pub mod distribution;
pub mod error;
pub mod generate;
pub mod graph;
pub mod num;
pub mod recombine;
pub mod reduction;
pub mod solver;
pub mod tabucol;

pub use coloring::{conflict_count, Assignment, Color, Partition};
pub use error::{ContractError, ParseError};
pub use graph::Graph;
pub use num::Scalar;
pub use reduction::{recover_ir, reduce_ivr, Recovery, ReductionStack};
pub use solver::{Mode, RunResult, Solver, SolverParams};

/// Distribution matrix over `f64`.
pub type DistributionMatrix = distribution::DistributionMatrix<f64>;
/// Distribution matrix over `f32`.
pub type DistributionMatrixF32 = distribution::DistributionMatrix<f32>;
/// Population of `f64` distribution matrices.
pub type DistributionPopulation = distribution::DistributionPopulation<f64>;
/// Solver running its distribution model in `f64`.
pub type Solver64 = solver::Solver<f64>;
/// Solver running its distribution model in `f32`.
pub type Solver32 = solver::Solver<f32>;

/// Deterministic generator used everywhere a seed is accepted.
pub type SeededRng = rand_chacha::ChaCha8Rng;
