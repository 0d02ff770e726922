//! Color assignments, their conflict counts and the partition view.

use crate::error::ContractError;
use crate::graph::Graph;

/// Zero-based color index. One-based only at I/O boundaries.
pub type Color = usize;

/// Number of edges whose endpoints share a color.
///
/// Each conflicting edge is counted once, i.e. half of the ordered-pair
/// double sum.
pub fn conflict_count(g: &Graph, colors: &[Color]) -> usize {
    assert_eq!(colors.len(), g.vertex_count(), "assignment length must match the graph");
    g.edges().filter(|&(u, v)| colors[u] == colors[v]).count()
}

/// Conflicting edges `(u, v)` with `u < v`, zero-based, in edge order.
pub fn conflicting_edges(g: &Graph, colors: &[Color]) -> Vec<(usize, usize)> {
    assert_eq!(colors.len(), g.vertex_count(), "assignment length must match the graph");
    g.edges().filter(|&(u, v)| colors[u] == colors[v]).collect()
}

/// A candidate solution: one color per vertex, with its conflict count.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Assignment {
    colors: Vec<Color>,
    k: usize,
    conflicts: usize,
}

impl Assignment {
    /// Validates `colors` against `g` and `k` and counts conflicts.
    pub fn new(g: &Graph, colors: Vec<Color>, k: usize) -> Result<Self, ContractError> {
        if colors.len() != g.vertex_count() {
            return Err(ContractError::LengthMismatch { expected: g.vertex_count(), actual: colors.len() });
        }
        if let Some((vertex, &c)) = colors.iter().enumerate().find(|(_, &c)| c >= k) {
            return Err(ContractError::ColorOutOfRange { vertex, color: c + 1, k });
        }
        let conflicts = conflict_count(g, &colors);
        Ok(Self { colors, k, conflicts })
    }

    /// Builds an assignment from one-based colors as they appear in files.
    pub fn from_one_based(g: &Graph, colors: &[usize], k: usize) -> Result<Self, ContractError> {
        if let Some((vertex, &c)) = colors.iter().enumerate().find(|(_, &c)| c == 0 || c > k) {
            return Err(ContractError::ColorOutOfRange { vertex, color: c, k });
        }
        Self::new(g, colors.iter().map(|&c| c - 1).collect(), k)
    }

    /// Trusted constructor for callers that already know the conflict count.
    pub(crate) fn from_parts(colors: Vec<Color>, k: usize, conflicts: usize) -> Self {
        debug_assert!(colors.iter().all(|&c| c < k));
        Self { colors, k, conflicts }
    }

    /// Like [`Assignment::new`] but panics on invalid input; for internal
    /// producers whose output is in range by construction.
    pub(crate) fn evaluate(g: &Graph, colors: Vec<Color>, k: usize) -> Self {
        debug_assert!(colors.iter().all(|&c| c < k));
        let conflicts = conflict_count(g, &colors);
        Self { colors, k, conflicts }
    }

    #[inline]
    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    #[inline]
    pub fn k(&self) -> usize {
        self.k
    }

    #[inline]
    pub fn conflicts(&self) -> usize {
        self.conflicts
    }

    #[inline]
    pub fn is_legal(&self) -> bool {
        self.conflicts == 0
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.colors.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn to_one_based(&self) -> Vec<usize> {
        self.colors.iter().map(|&c| c + 1).collect()
    }

    pub fn into_colors(self) -> Vec<Color> {
        self.colors
    }

    /// Number of vertices in each color class.
    pub fn class_sizes(&self) -> Vec<usize> {
        class_sizes(&self.colors, self.k)
    }
}

pub(crate) fn class_sizes(colors: &[Color], k: usize) -> Vec<usize> {
    let mut sizes = vec![0; k];
    for &c in colors {
        sizes[c] += 1;
    }
    sizes
}

/// Color classes `V_1..V_k`, each listing its vertices in increasing order.
/// Classes may be empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    classes: Vec<Vec<usize>>,
}

impl Partition {
    pub fn from_colors(colors: &[Color], k: usize) -> Self {
        let mut classes = vec![Vec::new(); k];
        for (v, &c) in colors.iter().enumerate() {
            classes[c].push(v);
        }
        Self { classes }
    }

    pub fn from_assignment(a: &Assignment) -> Self {
        Self::from_colors(a.colors(), a.k())
    }

    /// Checks that `classes` are disjoint and cover `0..n`.
    pub fn new(classes: Vec<Vec<usize>>, n: usize) -> Result<Self, ContractError> {
        let mut seen = vec![false; n];
        for &v in classes.iter().flatten() {
            if v >= n {
                return Err(ContractError::VertexOutOfRange { vertex: v, n });
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(ContractError::Overlap { vertex: v });
            }
        }
        if let Some(vertex) = seen.iter().position(|&s| !s) {
            return Err(ContractError::Uncovered { vertex });
        }
        let mut classes = classes;
        classes.iter_mut().for_each(|c| c.sort_unstable());
        Ok(Self { classes })
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn k(&self) -> usize {
        self.classes.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.classes.iter().map(Vec::len).sum()
    }

    /// Color sequence with vertex `v` colored by the index of its class.
    pub fn to_colors(&self) -> Vec<Color> {
        let mut colors = vec![0; self.vertex_count()];
        for (c, class) in self.classes.iter().enumerate() {
            for &v in class {
                colors[v] = c;
            }
        }
        colors
    }

    pub fn to_assignment(&self, g: &Graph) -> Result<Assignment, ContractError> {
        Assignment::new(g, self.to_colors(), self.k())
    }
}
