//! One-move tabu search for k-coloring (TabuCol).
//!
//! The neighborhood is every recoloring of a conflicted vertex. Moves are
//! scored from a table `gamma[v][c]`, the number of neighbors of `v`
//! currently colored `c`, which is maintained incrementally.

use rand::Rng;

use crate::coloring::{Assignment, Color};
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TabuParams {
    /// Move budget per call.
    pub iter_max: usize,
    /// Random part of the tenure is drawn from `0..tenure_base`.
    pub tenure_base: usize,
    /// Tenure grows by `tenure_slope` per current conflict.
    pub tenure_slope: f64,
}

impl Default for TabuParams {
    fn default() -> Self {
        Self { iter_max: 5000, tenure_base: 10, tenure_slope: 0.6 }
    }
}

/// Neighbor-color counts and tabu expiry per `(vertex, color)`.
#[derive(Debug, Clone)]
pub struct MoveTable {
    k: usize,
    gamma: Vec<u32>,
    tabu_until: Vec<u64>,
}

impl MoveTable {
    pub fn new(g: &Graph, colors: &[Color], k: usize) -> Self {
        let n = g.vertex_count();
        let mut gamma = vec![0u32; n * k];
        for (u, v) in g.edges() {
            gamma[u * k + colors[v]] += 1;
            gamma[v * k + colors[u]] += 1;
        }
        Self { k, gamma, tabu_until: vec![0; n * k] }
    }

    #[inline]
    pub fn gamma(&self, v: usize, c: Color) -> u32 {
        self.gamma[v * self.k + c]
    }

    /// True when every count equals a from-scratch recount for `colors`.
    pub fn is_consistent(&self, g: &Graph, colors: &[Color]) -> bool {
        self.gamma == MoveTable::new(g, colors, self.k).gamma
    }

    /// Sum of `gamma[v][colors[v]]`, which is twice the conflict count.
    pub fn own_color_total(&self, colors: &[Color]) -> usize {
        colors.iter().enumerate().map(|(v, &c)| self.gamma(v, c) as usize).sum()
    }
}

/// Conflicted vertices with O(1) insert and remove.
struct ConflictSet {
    list: Vec<usize>,
    pos: Vec<usize>,
}

impl ConflictSet {
    const ABSENT: usize = usize::MAX;

    fn new(n: usize) -> Self {
        Self { list: Vec::new(), pos: vec![Self::ABSENT; n] }
    }

    fn set(&mut self, v: usize, conflicted: bool) {
        match (conflicted, self.pos[v] != Self::ABSENT) {
            (true, false) => {
                self.pos[v] = self.list.len();
                self.list.push(v);
            }
            (false, true) => {
                let i = self.pos[v];
                let last = *self.list.last().unwrap();
                self.list.swap_remove(i);
                if last != v {
                    self.pos[last] = i;
                }
                self.pos[v] = Self::ABSENT;
            }
            _ => {}
        }
    }
}

/// Statistics of a search, for tests and diagnostics.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct TabuStats {
    pub iterations: usize,
}

/// Runs tabu search from `start` and returns the best assignment seen.
///
/// Stops after `iter_max` moves or as soon as no conflict remains. Tabu
/// moves are allowed only if they beat the best conflict count so far.
/// Ties between equally good moves are broken uniformly at random.
pub fn tabu_search<R: Rng + ?Sized>(g: &Graph, start: &Assignment, params: &TabuParams, rng: &mut R) -> Assignment {
    search(g, start, params, rng, false).0
}

pub fn tabu_search_with_stats<R: Rng + ?Sized>(
    g: &Graph,
    start: &Assignment,
    params: &TabuParams,
    rng: &mut R,
) -> (Assignment, TabuStats) {
    search(g, start, params, rng, false)
}

pub(crate) fn search<R: Rng + ?Sized>(
    g: &Graph,
    start: &Assignment,
    params: &TabuParams,
    rng: &mut R,
    check_table: bool,
) -> (Assignment, TabuStats) {
    let k = start.k();
    let n = g.vertex_count();
    assert_eq!(start.len(), n, "assignment does not match the graph");
    if start.is_legal() || k < 2 {
        return (start.clone(), TabuStats::default());
    }

    let mut colors = start.colors().to_vec();
    let mut table = MoveTable::new(g, &colors, k);
    let mut conflicted = ConflictSet::new(n);
    for v in 0..n {
        conflicted.set(v, table.gamma(v, colors[v]) > 0);
    }
    let mut f = start.conflicts() as i64;
    let mut best_f = f;
    let mut best_colors = colors.clone();
    let mut iter: u64 = 0;

    while (iter as usize) < params.iter_max && f > 0 {
        iter += 1;
        let mut chosen: Option<(usize, Color)> = None;
        let mut best_delta = i64::MAX;
        let mut ties = 0u32;
        for &v in &conflicted.list {
            let cv = colors[v];
            let row = &table.gamma[v * k..(v + 1) * k];
            let tabu_row = &table.tabu_until[v * k..(v + 1) * k];
            let own = row[cv] as i64;
            for c in 0..k {
                if c == cv {
                    continue;
                }
                let delta = row[c] as i64 - own;
                if delta > best_delta {
                    continue;
                }
                if tabu_row[c] > iter && f + delta >= best_f {
                    continue;
                }
                if delta < best_delta {
                    best_delta = delta;
                    chosen = Some((v, c));
                    ties = 1;
                } else {
                    ties += 1;
                    if rng.random_range(0..ties) == 0 {
                        chosen = Some((v, c));
                    }
                }
            }
        }

        let (v, c) = match chosen {
            Some(m) => m,
            None => {
                // every move is tabu: take a random one
                let v = conflicted.list[rng.random_range(0..conflicted.list.len())];
                let mut c = rng.random_range(0..k - 1);
                if c >= colors[v] {
                    c += 1;
                }
                best_delta = table.gamma(v, c) as i64 - table.gamma(v, colors[v]) as i64;
                (v, c)
            }
        };

        let old = colors[v];
        colors[v] = c;
        for &w in g.neighbors(v) {
            table.gamma[w * k + old] -= 1;
            table.gamma[w * k + c] += 1;
            let cw = colors[w];
            if cw == old || cw == c {
                conflicted.set(w, table.gamma[w * k + cw] > 0);
            }
        }
        conflicted.set(v, table.gamma[v * k + c] > 0);
        f += best_delta;

        let random_part = if params.tenure_base > 0 { rng.random_range(0..params.tenure_base) } else { 0 };
        let tenure = random_part as u64 + (params.tenure_slope * f as f64).floor() as u64;
        table.tabu_until[v * k + old] = iter + tenure;

        if check_table {
            assert!(table.is_consistent(g, &colors), "gamma table drifted at iteration {iter}");
            assert_eq!(table.own_color_total(&colors), 2 * f as usize);
        }

        if f < best_f {
            best_f = f;
            best_colors.copy_from_slice(&colors);
        }
    }

    let best = Assignment::from_parts(best_colors, k, best_f as usize);
    debug_assert_eq!(best.conflicts(), crate::conflict_count(g, best.colors()));
    (best, TabuStats { iterations: iter as usize })
}
