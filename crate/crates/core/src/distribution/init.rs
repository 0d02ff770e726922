//! Population initialization and sampling.

use rand::Rng;

use super::{sample_column, DistributionMatrix, DistributionPopulation};
use crate::coloring::{class_sizes, Assignment, Color};
use crate::error::ContractError;
use crate::graph::Graph;
use crate::num::Scalar;

pub fn uniform_population<T: Scalar>(np: usize, k: usize, n: usize) -> DistributionPopulation<T> {
    DistributionPopulation { individuals: vec![DistributionMatrix::uniform(k, n); np] }
}

/// One full sample per individual.
pub fn sample_population<T: Scalar, R: Rng + ?Sized>(
    qpop: &DistributionPopulation<T>,
    g: &Graph,
    rng: &mut R,
) -> Vec<Assignment> {
    qpop.iter().map(|q| Assignment::evaluate(g, q.sample(rng), q.k())).collect()
}

/// Sampling with inheritance: each component is redrawn from its column
/// with probability `r` and otherwise copied from the paired solution.
pub fn sample_with_inheritance<T: Scalar, R: Rng + ?Sized>(
    qpop: &DistributionPopulation<T>,
    ppop: &[Assignment],
    r: f64,
    g: &Graph,
    rng: &mut R,
) -> Vec<Assignment> {
    assert_eq!(qpop.len(), ppop.len());
    qpop.iter()
        .zip(ppop)
        .map(|(q, x)| {
            assert_eq!(q.n(), x.len());
            let colors = x
                .colors()
                .iter()
                .enumerate()
                .map(|(j, &c)| if rng.random::<f64>() < r { sample_column(q.column(j), rng) } else { c })
                .collect();
            Assignment::evaluate(g, colors, q.k())
        })
        .collect()
}

/// Index of the smallest color class; lowest index wins ties.
pub fn min_class(colors: &[Color], k: usize) -> Color {
    let sizes = class_sizes(colors, k);
    let mut best = 0;
    for (c, &s) in sizes.iter().enumerate() {
        if s < sizes[best] {
            best = c;
        }
    }
    best
}

/// Color after deleting color `removed`: colors above it shift down by
/// one and the removed color merges into its lower neighbor (into the new
/// color 0 when it was color 0 itself).
#[inline]
pub fn drop_color(c: Color, removed: Color) -> Color {
    if c > removed {
        c - 1
    } else if c == removed {
        removed.saturating_sub(1)
    } else {
        c
    }
}

/// Seeds a `(k-1)`-color search from populations that solved `k` colors.
///
/// For each individual the smallest color class of its solution is
/// removed: solution colors are shifted with [`drop_color`] and the
/// matching row of the distribution is deleted, columns renormalized.
/// The resulting solutions are evaluated on `g`.
pub fn inherited_init<T: Scalar>(
    qpop: &DistributionPopulation<T>,
    ppop: &[Assignment],
    g: &Graph,
    k: usize,
) -> Result<(DistributionPopulation<T>, Vec<Assignment>), ContractError> {
    if k < 2 {
        return Err(ContractError::TooFewColors { k });
    }
    if qpop.len() != ppop.len() {
        return Err(ContractError::LengthMismatch { expected: qpop.len(), actual: ppop.len() });
    }
    let mut qs = Vec::with_capacity(qpop.len());
    let mut ps = Vec::with_capacity(ppop.len());
    for (q, x) in qpop.iter().zip(ppop) {
        if q.k() != k || x.k() != k {
            return Err(ContractError::LengthMismatch { expected: k, actual: q.k().min(x.k()) });
        }
        let removed = min_class(x.colors(), k);
        qs.push(q.without_row(removed)?);
        let colors = x.colors().iter().map(|&c| drop_color(c, removed)).collect();
        ps.push(Assignment::new(g, colors, k - 1)?);
    }
    Ok((DistributionPopulation { individuals: qs }, ps))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn min_class_tie_takes_lowest() {
        assert_eq!(min_class(&[0, 0, 0, 0, 0, 1, 1, 1, 2, 2, 2, 2], 3), 1);
        assert_eq!(min_class(&[0, 1, 2, 2], 3), 0);
        assert_eq!(min_class(&[0, 0, 2], 3), 1);
    }

    #[test]
    fn drop_color_shifts() {
        // one-based view: removing color 2 maps 3 -> 2, color 2 -> 1, color 1 -> 1
        assert_eq!(drop_color(2, 1), 1);
        assert_eq!(drop_color(1, 1), 0);
        assert_eq!(drop_color(0, 1), 0);
        assert_eq!(drop_color(0, 0), 0);
        assert_eq!(drop_color(1, 0), 0);
    }

    #[test]
    fn inheritance_extremes() {
        let mut rng = crate::SeededRng::seed_from_u64(2);
        let g = crate::generate::path(30);
        let q = uniform_population::<f64>(3, 4, 30);
        let p = sample_population(&q, &g, &mut rng);
        assert_eq!(sample_with_inheritance(&q, &p, 0.0, &g, &mut rng), p);
        let p1 = sample_with_inheritance(&q, &p, 1.0, &g, &mut rng);
        assert_ne!(p1, p);
        assert!(p1.iter().all(|a| a.conflicts() == crate::conflict_count(&g, a.colors())));
    }

    #[test]
    fn inherited_init_rejects_single_color() {
        let g = crate::generate::path(2);
        let q = uniform_population::<f64>(1, 1, 2);
        let p = vec![Assignment::new(&g, vec![0, 0], 1).unwrap()];
        assert_eq!(inherited_init(&q, &p, &g, 1), Err(ContractError::TooFewColors { k: 1 }));
    }
}
