//! Iterative vertex removal (IVR) and inverse recovery (IR).
//!
//! IVR repeatedly deletes a vertex whose current degree is below the
//! threshold `k`, recording the vertex and its then-remaining neighbors.
//! Any legal k-coloring of what survives extends to the whole graph by
//! popping the record and giving each vertex a color its snapshot
//! neighbors do not use; fewer than `k` neighbors always leave one free.

use std::collections::VecDeque;

use crate::coloring::{conflict_count, Assignment, Color};
use crate::graph::Graph;

/// One removal: the original vertex id and the original ids of the
/// neighbors still present when it was removed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RemovedVertex {
    pub vertex: usize,
    pub neighbors: Vec<usize>,
}

/// Removal record plus the reduced-index to original-id bijection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionStack {
    entries: Vec<RemovedVertex>,
    surviving: Vec<usize>,
    reduced_index: Vec<Option<usize>>,
    threshold: usize,
}

impl ReductionStack {
    /// Removed vertices in removal order (bottom of the stack first).
    pub fn entries(&self) -> &[RemovedVertex] {
        &self.entries
    }

    /// Original ids of the surviving vertices, indexed by reduced id.
    pub fn surviving(&self) -> &[usize] {
        &self.surviving
    }

    pub fn original_id(&self, reduced: usize) -> usize {
        self.surviving[reduced]
    }

    /// Reduced id of an original vertex, `None` if it was removed.
    pub fn reduced_id(&self, original: usize) -> Option<usize> {
        self.reduced_index[original]
    }

    pub fn threshold(&self) -> usize {
        self.threshold
    }

    pub fn original_vertex_count(&self) -> usize {
        self.reduced_index.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Peels vertices of degree `< k` until every remaining degree is `>= k`.
///
/// Candidates are processed in FIFO order, seeded in increasing vertex
/// order; the surviving set does not depend on the order.
pub fn reduce_ivr(g: &Graph, k: usize) -> (Graph, ReductionStack) {
    assert!(k >= 1, "IVR threshold must be at least 1");
    let n = g.vertex_count();
    let mut degree: Vec<usize> = g.degrees().collect();
    let mut removed = vec![false; n];
    let mut queued = vec![false; n];
    let mut queue: VecDeque<usize> = VecDeque::new();
    for v in 0..n {
        if degree[v] < k {
            queued[v] = true;
            queue.push_back(v);
        }
    }

    let mut entries = Vec::new();
    while let Some(v) = queue.pop_front() {
        let neighbors: Vec<usize> = g.neighbors(v).iter().copied().filter(|&w| !removed[w]).collect();
        debug_assert_eq!(neighbors.len(), degree[v]);
        removed[v] = true;
        for &w in &neighbors {
            degree[w] -= 1;
            if degree[w] < k && !queued[w] {
                queued[w] = true;
                queue.push_back(w);
            }
        }
        entries.push(RemovedVertex { vertex: v, neighbors });
    }

    let surviving: Vec<usize> = (0..n).filter(|&v| !removed[v]).collect();
    let mut reduced_index = vec![None; n];
    for (i, &v) in surviving.iter().enumerate() {
        reduced_index[v] = Some(i);
    }
    let reduced = g.induced(&surviving);
    (reduced, ReductionStack { entries, surviving, reduced_index, threshold: k })
}

/// Result of inverse recovery.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Recovery {
    /// Coloring of the original graph.
    pub assignment: Assignment,
    /// False when the reduced coloring had conflicts; the result is then
    /// still complete but carries no legality guarantee.
    pub sound: bool,
}

/// Extends a coloring of the reduced graph to the original graph `g`.
///
/// Pops the stack in LIFO order and gives each vertex the smallest color
/// not used by its snapshot neighbors.
pub fn recover_ir(g: &Graph, reduced: &Assignment, stack: &ReductionStack, k: usize) -> Recovery {
    assert_eq!(reduced.len(), stack.surviving.len(), "reduced assignment does not match the stack");
    assert_eq!(g.vertex_count(), stack.original_vertex_count());
    let k = k.max(reduced.k());
    let mut colors: Vec<Option<Color>> = vec![None; g.vertex_count()];
    for (i, &v) in stack.surviving.iter().enumerate() {
        colors[v] = Some(reduced.colors()[i]);
    }

    let mut used = vec![false; k];
    for entry in stack.entries.iter().rev() {
        let mut touched = Vec::with_capacity(entry.neighbors.len());
        for &w in &entry.neighbors {
            let c = colors[w].expect("snapshot neighbors are colored before the vertex");
            if !used[c] {
                used[c] = true;
                touched.push(c);
            }
        }
        let free = used.iter().position(|&u| !u).expect("snapshot degree below threshold");
        colors[entry.vertex] = Some(free);
        for c in touched {
            used[c] = false;
        }
    }

    let colors: Vec<Color> = colors.into_iter().map(|c| c.expect("every vertex is colored")).collect();
    let conflicts = conflict_count(g, &colors);
    Recovery { assignment: Assignment::from_parts(colors, k, conflicts), sound: reduced.is_legal() }
}
