//! Random instance generators for tests, examples and desk benchmarks.

use rand::Rng;

use crate::graph::Graph;

/// Erdős–Rényi `G(n, p)`.
pub fn gnp<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).expect("generated edges are in range")
}

/// Graph with a hidden `k`-coloring: vertices are dealt round-robin into
/// `k` classes and each pair from different classes is joined with
/// probability `p`. Vertex `v` belongs to class `v % k`.
pub fn planted<R: Rng + ?Sized>(n: usize, k: usize, p: f64, rng: &mut R) -> Graph {
    assert!(k >= 1);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if u % k != v % k && rng.random::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).expect("generated edges are in range")
}

/// Uniform random recursive tree: vertex `v > 0` attaches to a uniformly
/// chosen earlier vertex.
pub fn random_tree<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Graph {
    let edges: Vec<_> = (1..n).map(|v| (rng.random_range(0..v), v)).collect();
    Graph::from_edges(n, edges).expect("generated edges are in range")
}

pub fn path(n: usize) -> Graph {
    Graph::from_edges(n, (1..n).map(|v| (v - 1, v))).expect("path edges are in range")
}

pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3);
    Graph::from_edges(n, (0..n).map(|v| (v, (v + 1) % n))).expect("cycle edges are in range")
}

pub fn complete(n: usize) -> Graph {
    let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
    Graph::from_edges(n, edges).expect("clique edges are in range")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn shapes() {
        let mut rng = crate::SeededRng::seed_from_u64(1);
        assert_eq!(complete(5).edge_count(), 10);
        assert_eq!(cycle(6).edge_count(), 6);
        assert_eq!(path(4).edge_count(), 3);
        assert_eq!(random_tree(30, &mut rng).edge_count(), 29);
        let g = planted(40, 4, 0.5, &mut rng);
        assert!(g.edges().all(|(u, v)| u % 4 != v % 4));
    }
}
