//! Independent check of a coloring file against an instance.

use colordist::{coloring::conflicting_edges, Graph};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Offending edges listed in a report before truncation.
pub const EDGE_LIST_CAP: usize = 100;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AssignmentError {
    #[error("line {line}: `{text}` is not a color")]
    NotAColor { line: usize, text: String },
    #[error("assignment has {actual} colors but the graph has {expected} vertices")]
    LengthMismatch { expected: usize, actual: usize },
    #[error("vertex {vertex}: color {color} is outside 1..={k}")]
    ColorOutOfRange { vertex: usize, color: usize, k: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub vertices: usize,
    pub colors_used: usize,
    pub conflicts: usize,
    pub legal: bool,
    /// One-based endpoints, at most [`EDGE_LIST_CAP`] of them.
    pub conflicting_edges: Vec<(usize, usize)>,
    pub edges_truncated: bool,
}

/// Reads one 1-based color per line; `#` starts a comment, blank lines
/// are skipped.
pub fn parse_assignment(text: &str) -> Result<Vec<usize>, AssignmentError> {
    let mut colors = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let color =
            content.parse().map_err(|_| AssignmentError::NotAColor { line: i + 1, text: content.to_string() })?;
        colors.push(color);
    }
    Ok(colors)
}

/// Checks 1-based `colors` on `g`. Colors must lie in `1..=k`; without
/// `k` any positive color is accepted.
pub fn validate_assignment(g: &Graph, colors: &[usize], k: Option<usize>) -> Result<ValidationReport, AssignmentError> {
    let n = g.vertex_count();
    if colors.len() != n {
        return Err(AssignmentError::LengthMismatch { expected: n, actual: colors.len() });
    }
    let limit = k.unwrap_or(usize::MAX);
    if let Some((v, &c)) = colors.iter().enumerate().find(|&(_, &c)| c == 0 || c > limit) {
        return Err(AssignmentError::ColorOutOfRange { vertex: v + 1, color: c, k: limit });
    }
    let zero_based: Vec<usize> = colors.iter().map(|c| c - 1).collect();
    let edges = conflicting_edges(g, &zero_based);
    let mut used = zero_based.clone();
    used.sort_unstable();
    used.dedup();
    Ok(ValidationReport {
        vertices: n,
        colors_used: used.len(),
        conflicts: edges.len(),
        legal: edges.is_empty(),
        edges_truncated: edges.len() > EDGE_LIST_CAP,
        conflicting_edges: edges.iter().take(EDGE_LIST_CAP).map(|&(u, v)| (u + 1, v + 1)).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_with_one_clash() {
        let g = Graph::from_edges(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        let colors = parse_assignment("# k3\n1\n1\n\n2\n").unwrap();
        let r = validate_assignment(&g, &colors, Some(3)).unwrap();
        assert_eq!(r.conflicts, 1);
        assert!(!r.legal);
        assert_eq!(r.conflicting_edges, vec![(1, 2)]);
        assert_eq!(r.colors_used, 2);
    }

    #[test]
    fn errors() {
        let g = Graph::from_edges(2, [(0, 1)]).unwrap();
        assert!(matches!(parse_assignment("1\nx\n"), Err(AssignmentError::NotAColor { line: 2, .. })));
        assert!(matches!(validate_assignment(&g, &[1], None), Err(AssignmentError::LengthMismatch { .. })));
        assert!(matches!(validate_assignment(&g, &[1, 0], None), Err(AssignmentError::ColorOutOfRange { .. })));
        assert!(matches!(validate_assignment(&g, &[1, 3], Some(2)), Err(AssignmentError::ColorOutOfRange { .. })));
        assert!(validate_assignment(&g, &[1, 2], Some(2)).unwrap().legal);
    }

    #[test]
    fn random_files_match_conflict_count() {
        use colordist::{conflict_count, generate, SeededRng};
        use rand::{Rng, SeedableRng};
        let mut rng = SeededRng::seed_from_u64(4);
        for _ in 0..100 {
            let g = generate::gnp(rng.random_range(1..40), rng.random(), &mut rng);
            let k = rng.random_range(1..6);
            let colors: Vec<usize> = (0..g.vertex_count()).map(|_| rng.random_range(1..=k)).collect();
            let text: String = colors.iter().map(|c| format!("{c}\n")).collect();
            let report = validate_assignment(&g, &parse_assignment(&text).unwrap(), Some(k)).unwrap();
            let zero: Vec<usize> = colors.iter().map(|c| c - 1).collect();
            assert_eq!(report.conflicts, conflict_count(&g, &zero));
        }
    }
}
