//! Solution-population refinement: multi-parent greedy partition crossover
//! (MGPX) followed by tabu search, guided by two promising solutions.

use std::time::Instant;

use rand::seq::index;
use rand::Rng;

use crate::coloring::{Assignment, Color, Partition};
use crate::error::ContractError;
use crate::graph::Graph;
use crate::tabucol::{tabu_search, TabuParams};

/// Builds one child from three parents.
///
/// For each of the `k` child classes a parent is drawn with probabilities
/// `{pc, (1-pc)/2, (1-pc)/2}`; its largest remaining class (lowest index on
/// ties) becomes the child class and those vertices are deleted from all
/// three parents. Vertices still uncovered afterwards keep the color they
/// have in the first parent.
pub fn mgpx_child<R: Rng + ?Sized>(parents: [&[Color]; 3], k: usize, pc: f64, rng: &mut R) -> Vec<Color> {
    let n = parents[0].len();
    debug_assert!(parents.iter().all(|p| p.len() == n));
    let partitions: Vec<Partition> = parents.iter().map(|p| Partition::from_colors(p, k)).collect();
    let mut sizes: Vec<Vec<usize>> = partitions.iter().map(|s| s.classes().iter().map(Vec::len).collect()).collect();
    let mut child = vec![usize::MAX; n];

    for l in 0..k {
        let u: f64 = rng.random();
        let i0 = if u < pc {
            0
        } else if u < pc + (1.0 - pc) / 2.0 {
            1
        } else {
            2
        };
        let mut l0 = 0;
        for (c, &s) in sizes[i0].iter().enumerate() {
            if s > sizes[i0][l0] {
                l0 = c;
            }
        }
        if sizes[i0][l0] == 0 {
            // every parent has been exhausted
            break;
        }
        for &v in &partitions[i0].classes()[l0] {
            if child[v] != usize::MAX {
                continue;
            }
            child[v] = l;
            for (p, parent) in parents.iter().enumerate() {
                sizes[p][parent[v]] -= 1;
            }
        }
    }

    for (v, c) in child.iter_mut().enumerate() {
        if *c == usize::MAX {
            *c = parents[0][v];
        }
    }
    child
}

/// Applies [`mgpx_child`] once per member.
///
/// Member `x` is the first parent; the other two are distinct picks from
/// the rest of the population plus the guides `p1` and `p2`.
pub fn mgpx<R: Rng + ?Sized>(
    pop: &[Assignment],
    p1: &Assignment,
    p2: &Assignment,
    pc: f64,
    g: &Graph,
    rng: &mut R,
) -> Result<Vec<Assignment>, ContractError> {
    let pool_size = pop.len() + 1;
    if pop.is_empty() || pool_size < 2 {
        return Err(ContractError::PopulationTooSmall { have: pop.len(), need: 1 });
    }
    let k = p1.k();
    let mut out = Vec::with_capacity(pop.len());
    for (i, x) in pop.iter().enumerate() {
        // pool: pop without member i, then p1, then p2
        let pick = |j: usize| -> &Assignment {
            if j < pop.len() - 1 {
                &pop[if j >= i { j + 1 } else { j }]
            } else if j == pop.len() - 1 {
                p1
            } else {
                p2
            }
        };
        let chosen = index::sample(rng, pool_size, 2);
        let x2 = pick(chosen.index(0));
        let x3 = pick(chosen.index(1));
        let colors = mgpx_child([x.colors(), x2.colors(), x3.colors()], k, pc, rng);
        out.push(Assignment::evaluate(g, colors, k));
    }
    Ok(out)
}

/// The two guide solutions of the refinement loop and its counters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PromisingPair {
    /// Best solution produced by the loop so far.
    pub p1: Assignment,
    /// Lagged guide, refreshed from `c1` every `guide_period` rounds.
    pub p2: Assignment,
    /// Most recently displaced `p1`.
    pub c1: Assignment,
    pub iter_stag: usize,
    pub iter: usize,
}

impl PromisingPair {
    pub fn new(best: Assignment) -> Self {
        Self { p1: best.clone(), p2: best.clone(), c1: best, iter_stag: 0, iter: 0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RefinePParams {
    /// Probability of drawing a class from the first parent in MGPX.
    pub pc: f64,
    pub tabu: TabuParams,
    /// Rounds without improving `p1` before the loop stops.
    pub stagnation_limit: usize,
    /// `p2` is refreshed when the round counter is a multiple of this.
    pub guide_period: usize,
}

impl Default for RefinePParams {
    fn default() -> Self {
        Self { pc: 0.4, tabu: TabuParams::default(), stagnation_limit: 20, guide_period: 10 }
    }
}

/// Refinement loop over the solution population.
///
/// Each round crosses the population with [`mgpx`], runs tabu search on
/// every child and compares the best child `b` to the guides: a strict
/// improvement over `p1` moves `p1` into `c1` and installs `b`, otherwise
/// the stagnation counter grows. `xstar` tracks the best solution overall.
/// Stops after `stagnation_limit` non-improving rounds, as soon as `xstar`
/// is conflict-free, or when `deadline` passes. Returns the last population.
pub fn refine_p<R: Rng + ?Sized>(
    pop: Vec<Assignment>,
    pair: &mut PromisingPair,
    xstar: &mut Assignment,
    g: &Graph,
    params: &RefinePParams,
    deadline: Option<Instant>,
    rng: &mut R,
) -> Result<Vec<Assignment>, ContractError> {
    pair.iter = 0;
    pair.iter_stag = 0;
    pair.c1 = xstar.clone();
    let mut current = pop;

    while pair.iter_stag < params.stagnation_limit && !xstar.is_legal() {
        if deadline.is_some_and(|d| Instant::now() >= d) {
            break;
        }
        pair.iter += 1;
        let children = mgpx(&current, &pair.p1, &pair.p2, params.pc, g, rng)?;
        let refined: Vec<Assignment> = children.iter().map(|c| tabu_search(g, c, &params.tabu, rng)).collect();

        let b = refined.iter().min_by_key(|a| a.conflicts()).expect("population is not empty").clone();
        if b.conflicts() < pair.p1.conflicts() {
            pair.iter_stag = 0;
            pair.c1 = std::mem::replace(&mut pair.p1, b.clone());
        } else {
            pair.iter_stag += 1;
        }
        if b.conflicts() < xstar.conflicts() {
            *xstar = b;
        }
        if pair.iter.is_multiple_of(params.guide_period) {
            pair.p2 = pair.c1.clone();
        }
        current = refined;
    }
    Ok(current)
}
