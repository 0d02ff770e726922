//! Undirected simple graphs and the DIMACS `.col` format.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{ContractError, ParseError};

/// Immutable undirected simple graph.
///
/// Vertices are `0..n`. Neighbor lists are sorted and duplicate-free, the
/// adjacency relation is symmetric and there are no self-loops.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<Vec<usize>>,
    edge_count: usize,
}

impl Graph {
    /// Builds a graph from zero-based edges. Duplicate edges (in either
    /// orientation) are collapsed.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, ContractError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adjacency = vec![Vec::new(); n];
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(ContractError::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(ContractError::SelfLoop { vertex: u });
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        Ok(Self::from_raw_adjacency(adjacency))
    }

    fn from_raw_adjacency(mut adjacency: Vec<Vec<usize>>) -> Self {
        let mut degree_sum = 0;
        for list in &mut adjacency {
            list.sort_unstable();
            list.dedup();
            degree_sum += list.len();
        }
        Self { adjacency, edge_count: degree_sum / 2 }
    }

    /// Parses DIMACS `.col` text: `c` comments, one `p edge <n> <m>` line
    /// and `e <u> <v>` lines with one-based vertices.
    pub fn parse_dimacs(text: &str) -> Result<Self, ParseError> {
        let mut adjacency: Option<Vec<Vec<usize>>> = None;
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let mut tokens = raw.split_whitespace();
            let Some(tag) = tokens.next() else { continue };
            match tag {
                "c" => {}
                "p" => {
                    if adjacency.is_some() {
                        return Err(ParseError::DuplicateHeader { line });
                    }
                    let format = tokens.next();
                    let n = tokens.next().and_then(|t| t.parse::<usize>().ok());
                    let m = tokens.next().and_then(|t| t.parse::<usize>().ok());
                    match (format, n, m, tokens.next()) {
                        (Some("edge" | "col"), Some(n), Some(_), None) => {
                            if n == 0 {
                                return Err(ParseError::ZeroVertices { line });
                            }
                            adjacency = Some(vec![Vec::new(); n]);
                        }
                        _ => return Err(ParseError::MalformedHeader { line }),
                    }
                }
                "e" => {
                    let Some(adj) = adjacency.as_mut() else {
                        return Err(ParseError::EdgeBeforeHeader { line });
                    };
                    let n = adj.len();
                    let u = tokens.next().and_then(|t| t.parse::<usize>().ok());
                    let v = tokens.next().and_then(|t| t.parse::<usize>().ok());
                    let (Some(u), Some(v), None) = (u, v, tokens.next()) else {
                        return Err(ParseError::MalformedEdge { line });
                    };
                    for w in [u, v] {
                        if w == 0 || w > n {
                            return Err(ParseError::VertexOutOfRange { line, vertex: w, n });
                        }
                    }
                    if u == v {
                        return Err(ParseError::SelfLoop { line, vertex: u });
                    }
                    adj[u - 1].push(v - 1);
                    adj[v - 1].push(u - 1);
                }
                _ => return Err(ParseError::UnknownLine { line }),
            }
        }
        adjacency.map(Self::from_raw_adjacency).ok_or(ParseError::MissingHeader)
    }

    /// Reads and parses a `.col` file.
    pub fn read_dimacs(path: impl AsRef<Path>) -> std::io::Result<Result<Self, ParseError>> {
        let text = std::fs::read_to_string(path)?;
        Ok(Self::parse_dimacs(&text))
    }

    /// Emits the graph as DIMACS text, one `e` line per edge with `u < v`.
    pub fn to_dimacs(&self) -> String {
        let mut out = String::with_capacity(16 * self.edge_count + 32);
        writeln!(out, "p edge {} {}", self.vertex_count(), self.edge_count).unwrap();
        for (u, v) in self.edges() {
            writeln!(out, "e {} {}", u + 1, v + 1).unwrap();
        }
        out
    }

    #[inline]
    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn degrees(&self) -> impl Iterator<Item = usize> + '_ {
        self.adjacency.iter().map(Vec::len)
    }

    /// Maximum vertex degree, zero for an edgeless graph.
    pub fn max_degree(&self) -> usize {
        self.degrees().max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Each edge once, as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().copied().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    /// Subgraph induced by `keep` (strictly increasing original ids).
    /// Vertex `i` of the result is `keep[i]`.
    pub fn induced(&self, keep: &[usize]) -> Self {
        let mut index = vec![usize::MAX; self.vertex_count()];
        for (i, &v) in keep.iter().enumerate() {
            index[v] = i;
        }
        let adjacency = keep
            .iter()
            .map(|&v| self.adjacency[v].iter().filter_map(|&w| (index[w] != usize::MAX).then_some(index[w])).collect())
            .collect();
        Self::from_raw_adjacency(adjacency)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle() {
        let g = Graph::parse_dimacs("c tiny\np edge 3 3\ne 1 2\ne 2 3\ne 1 3\n").unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edge_count(), 3);
        assert_eq!(g.neighbors(0), &[1, 2]);
        assert_eq!(g.max_degree(), 2);
    }

    #[test]
    fn duplicate_edges_collapse() {
        let g = Graph::parse_dimacs("p edge 2 2\ne 1 2\ne 1 2\ne 2 1\n").unwrap();
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.degrees().sum::<usize>(), 2);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        assert_eq!(Graph::parse_dimacs("c x\np edge 3\n"), Err(ParseError::MalformedHeader { line: 2 }));
        assert_eq!(
            Graph::parse_dimacs("p edge 3 1\ne 1 4\n"),
            Err(ParseError::VertexOutOfRange { line: 2, vertex: 4, n: 3 })
        );
        assert_eq!(Graph::parse_dimacs("p edge 3 1\n\ne 2 2\n"), Err(ParseError::SelfLoop { line: 3, vertex: 2 }));
        assert_eq!(Graph::parse_dimacs("p edge 0 0\n"), Err(ParseError::ZeroVertices { line: 1 }));
        assert_eq!(Graph::parse_dimacs("e 1 2\n"), Err(ParseError::EdgeBeforeHeader { line: 1 }));
        assert_eq!(Graph::parse_dimacs("p edge 2 1\ne 1 x\n"), Err(ParseError::MalformedEdge { line: 2 }));
        assert_eq!(Graph::parse_dimacs("c only\n"), Err(ParseError::MissingHeader));
        assert_eq!(Graph::parse_dimacs("p edge 2 1\nq 1 2\n"), Err(ParseError::UnknownLine { line: 2 }));
        assert_eq!(Graph::parse_dimacs("p edge 2 1\np edge 2 1\n"), Err(ParseError::DuplicateHeader { line: 2 }));
        assert_eq!(Graph::parse_dimacs("p edge 0 0"), Err(ParseError::ZeroVertices { line: 1 }));
    }

    #[test]
    fn from_edges_rejects_loops() {
        assert_eq!(Graph::from_edges(2, [(1, 1)]), Err(ContractError::SelfLoop { vertex: 1 }));
        assert!(Graph::from_edges(2, [(0, 2)]).is_err());
    }

    #[test]
    fn induced_relabels() {
        let g = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        let h = g.induced(&[1, 2, 3]);
        assert_eq!(h.vertex_count(), 3);
        assert_eq!(h.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2)]);
    }
}
