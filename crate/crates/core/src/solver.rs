//! Run orchestration for both problem modes.
//!
//! The inner loop co-evolves a distribution population and a solution
//! population on the IVR-reduced graph for a fixed color count until a
//! legal coloring appears or the budget runs out. The outer loop (chromatic
//! mode) starts at `max_degree + 1` colors and after every success seeds
//! the next, one-smaller color count from the archived populations.

use std::marker::PhantomData;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use serde::{Deserialize, Serialize};

use crate::coloring::{Assignment, Color};
use crate::distribution::{
    drop_color, min_class, orth_explore, refine_q, sample_population, sample_with_inheritance, uniform_population,
    DistributionMatrix, DistributionPopulation, RefineQParams,
};
use crate::error::ContractError;
use crate::graph::Graph;
use crate::num::Scalar;
use crate::recombine::{refine_p, PromisingPair, RefinePParams};
use crate::reduction::{recover_ir, reduce_ivr, ReductionStack};
use crate::tabucol::TabuParams;
use crate::SeededRng;

/// Full parameterization of a run. Defaults are the reference settings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SolverParams {
    /// Size of both populations.
    pub np: usize,
    /// Mixing weight of the exploitation update.
    pub alpha: f64,
    /// Tabu search moves per call.
    pub iter_max: usize,
    /// Probability that a column is exploited rather than disturbed.
    pub p0: f64,
    /// Rotation angle of the exploitation update, radians.
    pub dtheta: f64,
    /// Shrink factor of the disturbance update.
    pub lambda: f64,
    /// Sampling probability is drawn from these once per generation.
    pub r_choices: Vec<f64>,
    /// Probability of taking a crossover class from the first parent.
    pub pc: f64,
    pub tenure_base: usize,
    pub tenure_slope: f64,
    /// Wall-clock budget for the whole run, seconds.
    pub time_budget: Option<f64>,
    /// Cap on generations of each inner loop.
    pub max_inner_generations: Option<u64>,
    pub seed: u64,
    /// Chromatic mode stops once this many colors suffice.
    pub target_k: Option<usize>,
    /// Orthogonal exploration on/off.
    pub explore: bool,
    /// Exploitation branch on/off; when off every column is disturbed.
    pub exploit: bool,
}

impl Default for SolverParams {
    fn default() -> Self {
        Self {
            np: 8,
            alpha: 0.2,
            iter_max: 5000,
            p0: 0.98,
            dtheta: 0.05 * std::f64::consts::PI,
            lambda: 0.5,
            r_choices: vec![0.2, 0.8],
            pc: 0.4,
            tenure_base: 10,
            tenure_slope: 0.6,
            time_budget: Some(3600.0),
            max_inner_generations: None,
            seed: 0,
            target_k: None,
            explore: true,
            exploit: true,
        }
    }
}

impl SolverParams {
    pub fn validate(&self) -> Result<(), ContractError> {
        fn bad(name: &'static str, reason: impl Into<String>) -> Result<(), ContractError> {
            Err(ContractError::InvalidParameter { name, reason: reason.into() })
        }
        let unit = |x: f64| (0.0..=1.0).contains(&x);
        if self.np < 2 {
            return bad("np", "population size must be at least 2");
        }
        for (name, value) in [("alpha", self.alpha), ("p0", self.p0), ("lambda", self.lambda), ("pc", self.pc)] {
            if !unit(value) {
                return bad(name, format!("{value} is not a probability"));
            }
        }
        if self.r_choices.is_empty() || !self.r_choices.iter().all(|&r| unit(r)) {
            return bad("r_choices", "need one or more probabilities");
        }
        if !self.dtheta.is_finite() {
            return bad("dtheta", "must be finite");
        }
        if !(self.tenure_slope >= 0.0) {
            return bad("tenure_slope", "must be non-negative");
        }
        if let Some(t) = self.time_budget {
            if !(t >= 0.0) || !t.is_finite() {
                return bad("time_budget", "must be a non-negative number of seconds");
            }
        }
        Ok(())
    }

    fn tabu(&self) -> TabuParams {
        TabuParams { iter_max: self.iter_max, tenure_base: self.tenure_base, tenure_slope: self.tenure_slope }
    }

    fn refine_p(&self) -> RefinePParams {
        RefinePParams { pc: self.pc, tabu: self.tabu(), ..RefinePParams::default() }
    }

    fn refine_q(&self) -> RefineQParams {
        RefineQParams {
            p0: if self.exploit { self.p0 } else { 0.0 },
            alpha: self.alpha,
            dtheta: self.dtheta,
            lambda: self.lambda,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    KColoring,
    Chromatic,
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Mode::KColoring => "k-coloring",
            Mode::Chromatic => "chromatic",
        })
    }
}

/// Outcome of one run, as persisted by the harness.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunResult {
    pub instance: String,
    pub mode: Mode,
    /// Colors of the reported assignment's search.
    pub k: usize,
    /// Conflicting edges of `assignment` on the original graph.
    pub conflicts: usize,
    pub legal: bool,
    pub time_s: f64,
    pub inner_generations: u64,
    pub outer_generations: u64,
    pub seed: u64,
    /// One-based colors of the original graph's vertices.
    pub assignment: Vec<usize>,
}

/// Largest unit-norm violation seen across audited checkpoints.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct NormAudit {
    pub checks: usize,
    pub columns_checked: usize,
    pub max_deviation: f64,
    pub non_finite: bool,
}

impl NormAudit {
    fn record<T: Scalar>(&mut self, pop: &DistributionPopulation<T>) {
        self.checks += 1;
        self.columns_checked += pop.iter().map(|q| q.n()).sum::<usize>();
        self.max_deviation = self.max_deviation.max(pop.max_norm_deviation());
        self.non_finite |= pop.iter().any(|q| !q.is_finite());
    }
}

/// One pass of the outer loop.
#[derive(Debug, Clone, PartialEq)]
pub struct RoundRecord {
    pub k: usize,
    pub reduced_vertices: usize,
    pub success: bool,
    pub inner_generations: u64,
    pub elapsed_s: f64,
}

/// Populations and witness kept from the last successful round.
#[derive(Debug, Clone)]
pub struct Archive<T> {
    pub k: usize,
    pub q: DistributionPopulation<T>,
    /// Solutions over the archived reduced graph.
    pub p: Vec<Assignment>,
    /// Original ids of the archived reduced graph's vertices.
    pub surviving: Vec<usize>,
    /// Recovered legal coloring of the original graph.
    pub full: Vec<Color>,
}

/// Initial populations for `k_new = archive.k - 1` colors on a new reduced
/// graph whose vertex set contains the archived one.
///
/// Vertices already present inherit their column (minimum class row
/// removed, renormalized) and their color (shifted by [`drop_color`]).
/// Newly surviving vertices get a uniform column and their color from the
/// recovered full coloring, shifted the same way.
pub fn remap_archived_populations<T: Scalar>(
    archive: &Archive<T>,
    new_stack: &ReductionStack,
    new_graph: &Graph,
    k_new: usize,
) -> Result<(DistributionPopulation<T>, Vec<Assignment>), ContractError> {
    if archive.k < 2 || k_new + 1 != archive.k {
        return Err(ContractError::TooFewColors { k: archive.k });
    }
    let n_new = new_graph.vertex_count();
    let mut old_of_new = vec![None; n_new];
    for (jo, &orig) in archive.surviving.iter().enumerate() {
        let j = new_stack.reduced_id(orig).ok_or(ContractError::NotASubset { vertex: orig })?;
        old_of_new[j] = Some(jo);
    }
    let uniform = T::one() / T::of(k_new as f64).sqrt();

    let mut qs = Vec::with_capacity(archive.q.len());
    let mut ps = Vec::with_capacity(archive.p.len());
    for (q, x) in archive.q.iter().zip(&archive.p) {
        let removed = min_class(x.colors(), archive.k);
        let mut data = Vec::with_capacity(k_new * n_new);
        let mut colors = Vec::with_capacity(n_new);
        for (j, old) in old_of_new.iter().enumerate() {
            match *old {
                Some(jo) => {
                    data.extend(q.column_without_row(jo, removed));
                    colors.push(drop_color(x.colors()[jo], removed));
                }
                None => {
                    data.extend(std::iter::repeat_n(uniform, k_new));
                    let orig = new_stack.original_id(j);
                    colors.push(drop_color(archive.full[orig], removed));
                }
            }
        }
        qs.push(DistributionMatrix::from_raw(k_new, n_new, data));
        ps.push(Assignment::new(new_graph, colors, k_new)?);
    }
    Ok((DistributionPopulation::new(qs)?, ps))
}

struct InnerOutcome<T> {
    success: bool,
    xstar: Assignment,
    q: DistributionPopulation<T>,
    p: Vec<Assignment>,
    generations: u64,
}

/// Seeded solver. One instance performs one run at a time; the rng stream
/// continues across calls.
pub struct Solver<T: Scalar = f64> {
    params: SolverParams,
    rng: SeededRng,
    audit: Option<NormAudit>,
    rounds: Vec<RoundRecord>,
    _scalar: PhantomData<T>,
}

impl<T: Scalar> Solver<T> {
    pub fn new(params: SolverParams) -> Result<Self, ContractError> {
        params.validate()?;
        let rng = SeededRng::seed_from_u64(params.seed);
        Ok(Self { params, rng, audit: None, rounds: Vec::new(), _scalar: PhantomData })
    }

    /// Enables unit-norm checks after every mutation of a distribution
    /// population.
    pub fn with_norm_audit(mut self) -> Self {
        self.audit = Some(NormAudit::default());
        self
    }

    pub fn params(&self) -> &SolverParams {
        &self.params
    }

    pub fn norm_audit(&self) -> Option<&NormAudit> {
        self.audit.as_ref()
    }

    /// Outer-loop passes of the most recent run.
    pub fn rounds(&self) -> &[RoundRecord] {
        &self.rounds
    }

    fn audit(&mut self, q: &DistributionPopulation<T>) {
        if let Some(a) = self.audit.as_mut() {
            a.record(q);
        }
    }

    fn deadline(&self, start: Instant) -> Option<Instant> {
        self.params.time_budget.map(|s| start + Duration::from_secs_f64(s))
    }

    /// Searches for a legal `k`-coloring of `g`.
    pub fn solve_k(&mut self, g: &Graph, k: usize, instance: &str) -> Result<RunResult, ContractError> {
        if k == 0 {
            return Err(ContractError::TooFewColors { k });
        }
        let start = Instant::now();
        let deadline = self.deadline(start);
        self.rounds.clear();

        let (reduced, stack) = reduce_ivr(g, k);
        let q0 = uniform_population::<T>(self.params.np, k, reduced.vertex_count());
        let p0 = sample_population(&q0, &reduced, &mut self.rng);
        let outcome = self.inner_loop(&reduced, q0, p0, deadline)?;
        self.rounds.push(RoundRecord {
            k,
            reduced_vertices: reduced.vertex_count(),
            success: outcome.success,
            inner_generations: outcome.generations,
            elapsed_s: start.elapsed().as_secs_f64(),
        });

        let recovery = recover_ir(g, &outcome.xstar, &stack, k);
        let assignment = recovery.assignment;
        Ok(RunResult {
            instance: instance.to_string(),
            mode: Mode::KColoring,
            k,
            conflicts: assignment.conflicts(),
            legal: assignment.is_legal(),
            time_s: start.elapsed().as_secs_f64(),
            inner_generations: outcome.generations,
            outer_generations: 1,
            seed: self.params.seed,
            assignment: assignment.to_one_based(),
        })
    }

    /// Descends from `max_degree + 1` colors until an inner loop fails, the
    /// budget runs out, or `target_k` is reached. Reports the smallest color
    /// count that produced a legal coloring, with that coloring.
    pub fn solve_chromatic(&mut self, g: &Graph, instance: &str) -> Result<RunResult, ContractError> {
        let start = Instant::now();
        let deadline = self.deadline(start);
        self.rounds.clear();

        let mut k = g.max_degree() + 1;
        let mut archive: Option<Archive<T>> = None;
        let mut inner_total = 0;
        let mut outer = 0;

        loop {
            if let Some(a) = &archive {
                let done_by_target = self.params.target_k.is_some_and(|t| a.k <= t);
                let timed_out = deadline.is_some_and(|d| Instant::now() >= d);
                if done_by_target || a.k <= 1 || timed_out {
                    break;
                }
                k = a.k - 1;
            }
            let (reduced, stack) = reduce_ivr(g, k);
            let (q0, p0) = match &archive {
                None => {
                    let q0 = uniform_population::<T>(self.params.np, k, reduced.vertex_count());
                    let p0 = sample_population(&q0, &reduced, &mut self.rng);
                    (q0, p0)
                }
                Some(a) => remap_archived_populations(a, &stack, &reduced, k)?,
            };
            let outcome = self.inner_loop(&reduced, q0, p0, deadline)?;
            outer += 1;
            inner_total += outcome.generations;
            self.rounds.push(RoundRecord {
                k,
                reduced_vertices: reduced.vertex_count(),
                success: outcome.success,
                inner_generations: outcome.generations,
                elapsed_s: start.elapsed().as_secs_f64(),
            });
            if !outcome.success {
                break;
            }
            let recovery = recover_ir(g, &outcome.xstar, &stack, k);
            debug_assert!(recovery.assignment.is_legal());
            archive = Some(Archive {
                k,
                q: outcome.q,
                p: outcome.p,
                surviving: stack.surviving().to_vec(),
                full: recovery.assignment.into_colors(),
            });
        }

        let best = archive.expect("the first round always succeeds");
        let assignment = Assignment::new(g, best.full, best.k)?;
        Ok(RunResult {
            instance: instance.to_string(),
            mode: Mode::Chromatic,
            k: best.k,
            conflicts: assignment.conflicts(),
            legal: assignment.is_legal(),
            time_s: start.elapsed().as_secs_f64(),
            inner_generations: inner_total,
            outer_generations: outer,
            seed: self.params.seed,
            assignment: assignment.to_one_based(),
        })
    }

    fn inner_loop(
        &mut self,
        g: &Graph,
        mut q: DistributionPopulation<T>,
        mut p: Vec<Assignment>,
        deadline: Option<Instant>,
    ) -> Result<InnerOutcome<T>, ContractError> {
        self.audit(&q);
        let refine_p_params = self.params.refine_p();
        let refine_q_params = self.params.refine_q();
        let mut xstar = p.iter().min_by_key(|a| a.conflicts()).expect("population is not empty").clone();
        let mut pair = PromisingPair::new(xstar.clone());
        let mut generations = 0;

        while !xstar.is_legal() {
            if self.params.max_inner_generations.is_some_and(|m| generations >= m)
                || deadline.is_some_and(|d| Instant::now() >= d)
            {
                break;
            }
            generations += 1;
            if self.params.explore {
                let fitness: Vec<usize> = p.iter().map(Assignment::conflicts).collect();
                orth_explore(&mut q, &fitness, &mut self.rng);
                self.audit(&q);
            }
            let r = self.params.r_choices[self.rng.random_range(0..self.params.r_choices.len())];
            let sampled = sample_with_inheritance(&q, &p, r, g, &mut self.rng);
            let refined =
                refine_p(sampled.clone(), &mut pair, &mut xstar, g, &refine_p_params, deadline, &mut self.rng)?;
            refine_q(&mut q, &sampled, &refined, &refine_q_params, &mut self.rng);
            self.audit(&q);
            p = refined;
        }
        Ok(InnerOutcome { success: xstar.is_legal(), xstar, q, p, generations })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate;

    fn quick() -> SolverParams {
        SolverParams { time_budget: Some(30.0), max_inner_generations: Some(50), ..Default::default() }
    }

    #[test]
    fn defaults_validate() {
        assert!(SolverParams::default().validate().is_ok());
        assert!(SolverParams { np: 1, ..Default::default() }.validate().is_err());
        assert!(SolverParams { p0: 1.5, ..Default::default() }.validate().is_err());
        assert!(SolverParams { r_choices: vec![], ..Default::default() }.validate().is_err());
    }

    #[test]
    fn tree_two_colors_by_reduction() {
        use rand::SeedableRng;
        let mut rng = SeededRng::seed_from_u64(1);
        let g = generate::random_tree(40, &mut rng);
        let mut s = Solver::<f64>::new(quick()).unwrap();
        let r = s.solve_k(&g, 2, "tree").unwrap();
        assert!(r.legal);
        assert_eq!(s.rounds()[0].reduced_vertices, 0);
        assert_eq!(r.inner_generations, 0);
    }

    #[test]
    fn k4_three_colors_fails() {
        let g = generate::complete(4);
        let params = SolverParams { max_inner_generations: Some(3), iter_max: 200, ..quick() };
        let r = Solver::<f64>::new(params).unwrap().solve_k(&g, 3, "k4").unwrap();
        assert!(!r.legal);
        assert_eq!(r.conflicts, crate::conflict_count(&g, &r.assignment.iter().map(|c| c - 1).collect::<Vec<_>>()));
    }

    #[test]
    fn k4_chromatic() {
        let g = generate::complete(4);
        let params = SolverParams { max_inner_generations: Some(3), iter_max: 200, ..quick() };
        let mut s = Solver::<f64>::new(params).unwrap();
        let r = s.solve_chromatic(&g, "k4").unwrap();
        assert_eq!(r.k, 4);
        assert!(r.legal);
        assert_eq!(s.rounds().len(), 2);
        assert!(s.rounds()[0].success && !s.rounds()[1].success);
    }

    #[test]
    fn remap_pads_new_vertices_uniformly() {
        let g = generate::cycle(5);
        let (old_graph, old_stack) = reduce_ivr(&g, 3);
        assert_eq!(old_graph.vertex_count(), 0);
        let q = uniform_population::<f64>(2, 3, 0);
        let p = vec![Assignment::new(&old_graph, vec![], 3).unwrap(); 2];
        let archive = Archive { k: 3, q, p, surviving: old_stack.surviving().to_vec(), full: vec![0, 1, 0, 1, 2] };
        let (new_graph, new_stack) = reduce_ivr(&g, 2);
        assert_eq!(new_graph.vertex_count(), 5);
        let (q0, p0) = remap_archived_populations(&archive, &new_stack, &new_graph, 2).unwrap();
        let h = 0.5f64.sqrt();
        assert!(q0.iter().all(|m| m.columns().flatten().all(|&x| (x - h).abs() < 1e-15)));
        // min class of an empty solution is color 0; colors shift down
        assert_eq!(p0[0].colors(), &[0, 0, 0, 0, 1]);
    }

    #[test]
    fn remap_rejects_non_subset() {
        let g = generate::path(4);
        let q = uniform_population::<f64>(2, 3, 1);
        let h = Graph::from_edges(1, []).unwrap();
        let p = vec![Assignment::new(&h, vec![0], 3).unwrap(); 2];
        let archive = Archive { k: 3, q, p, surviving: vec![0], full: vec![0, 1, 0, 1] };
        let (new_graph, new_stack) = reduce_ivr(&g, 2);
        assert_eq!(
            remap_archived_populations(&archive, &new_stack, &new_graph, 2).unwrap_err(),
            ContractError::NotASubset { vertex: 0 }
        );
    }
}
